//! Reductions from subset rank/select to rank/select on a regular string.
//!
//! Reduction I (no empty sets) concatenates the sets into a string `S` and
//! marks the first symbol of every set, plus one trailing position, in a
//! bitvector `R`. Reduction II maps each empty set to a fresh sentinel
//! symbol and applies reduction I. Reduction III drops the empty sets,
//! records them in a sparse bitvector `E` and applies reduction I to the rest.
//!
//! All positions and set indices are 0-based and ranks are half-open.
//! Against the 1-based textbook formulas: the start of set `i` is
//! `select_R(i + 1)`, and the set holding string position `k` is
//! `rank_R(k + 1) - 1`.

use crate::bitvector::{BitBuf, PlainBitvector, SparseBitvector};
use crate::degenerate::DegenerateString;
use crate::error::{check_index, check_symbol, Error, Result};
use crate::index::{Component, SubsetRankSelect};
use crate::strrank::{Base, StringIndex, SymbolRankSelect};

/// Reduction I: string `S` of concatenated sets plus set-start bitvector `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionI {
    sigma: usize,
    n: usize,
    s: StringIndex,
    r: PlainBitvector,
}

impl ReductionI {
    /// Requires every set to be nonempty.
    pub fn build(x: &DegenerateString, base: Base) -> Result<Self> {
        let n0 = x.empty_sets();
        if n0 > 0 {
            return Err(Error::Precondition(format!(
                "reduction I needs nonempty sets, found {n0} empty"
            )));
        }
        Self::from_sets(x.sets(), x.sigma(), base)
    }

    /// Builds over nonempty `sets` on the alphabet `[0, alphabet)`.
    fn from_sets<'a, I>(sets: I, alphabet: usize, base: Base) -> Result<Self>
    where
        I: Iterator<Item = &'a [u32]>,
    {
        let mut symbols = Vec::new();
        let mut r = BitBuf::new();
        let mut n = 0;
        for set in sets {
            debug_assert!(!set.is_empty());
            symbols.extend_from_slice(set);
            r.push(true);
            for _ in 1..set.len() {
                r.push(false);
            }
            n += 1;
        }
        r.push(true);
        Ok(Self {
            sigma: alphabet,
            n,
            s: StringIndex::build(&symbols, alphabet, base)?,
            r: PlainBitvector::from_bitbuf(r),
        })
    }

    pub(crate) fn from_parts(sigma: usize, s: StringIndex, r: PlainBitvector) -> Result<Self> {
        if r.len() != s.len() + 1 {
            return Err(Error::Container("R must be one bit longer than S".into()));
        }
        if !r.get(0) || !r.get(r.len() - 1) {
            return Err(Error::Container(
                "R must start and end with a set bit".into(),
            ));
        }
        if s.sigma() < sigma {
            return Err(Error::Container(
                "string alphabet smaller than declared".into(),
            ));
        }
        Ok(Self {
            sigma,
            n: r.count_ones() - 1,
            s,
            r,
        })
    }

    /// The concatenated-sets string structure `S`.
    pub fn string_index(&self) -> &StringIndex {
        &self.s
    }

    /// The set-start bitvector `R` (length `N + 1`).
    pub fn indicator(&self) -> &PlainBitvector {
        &self.r
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, i: usize, c: usize) -> usize {
        let start = self.r.select_unchecked(i + 1, true);
        self.s.rank_unchecked(start, c)
    }

    pub(crate) fn select_internal(&self, j: usize, c: usize) -> Result<usize> {
        let k = self.s.select(j, c)?;
        Ok(self.r.rank1(k + 1) - 1)
    }
}

impl SubsetRankSelect for ReductionI {
    fn len(&self) -> usize {
        self.n
    }

    fn size(&self) -> usize {
        self.s.len()
    }

    fn empty_sets(&self) -> usize {
        0
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn subset_rank(&self, i: usize, c: usize) -> Result<usize> {
        check_index(i, self.n)?;
        check_symbol(c, self.sigma)?;
        Ok(self.rank_unchecked(i, c))
    }

    fn subset_select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.sigma)?;
        self.select_internal(j, c)
    }

    fn components(&self) -> Vec<Component> {
        vec![
            Component::new("S", self.s.size_bits()),
            Component::new("R", self.r.size_bits()),
        ]
    }
}

/// Reduction II: empty sets become the singleton `{sigma}` over an alphabet of `sigma + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionII {
    sigma: usize,
    inner: ReductionI,
}

impl ReductionII {
    pub fn build(x: &DegenerateString, base: Base) -> Result<Self> {
        let sigma = x.sigma();
        let sentinel = [sigma as u32];
        let sets = x
            .sets()
            .map(|set| if set.is_empty() { &sentinel[..] } else { set });
        Ok(Self {
            sigma,
            inner: ReductionI::from_sets(sets, sigma + 1, base)?,
        })
    }

    pub(crate) fn from_inner(sigma: usize, inner: ReductionI) -> Result<Self> {
        if inner.sigma != sigma + 1 {
            return Err(Error::Container("reduction II alphabet mismatch".into()));
        }
        Ok(Self { sigma, inner })
    }

    /// The reduction-I instance over the transformed string.
    pub fn inner(&self) -> &ReductionI {
        &self.inner
    }
}

impl SubsetRankSelect for ReductionII {
    fn len(&self) -> usize {
        self.inner.n
    }

    fn size(&self) -> usize {
        self.inner.s.len() - self.empty_sets()
    }

    fn empty_sets(&self) -> usize {
        self.inner.s.rank_unchecked(self.inner.s.len(), self.sigma)
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn subset_rank(&self, i: usize, c: usize) -> Result<usize> {
        check_index(i, self.inner.n)?;
        check_symbol(c, self.sigma)?;
        Ok(self.inner.rank_unchecked(i, c))
    }

    fn subset_select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.sigma)?;
        self.inner.select_internal(j, c)
    }

    fn components(&self) -> Vec<Component> {
        self.inner.components()
    }
}

/// Reduction III: sparse bitvector `E` over the empty sets plus reduction I over the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionIII {
    e: SparseBitvector,
    inner: ReductionI,
}

impl ReductionIII {
    pub fn build(x: &DegenerateString, base: Base) -> Result<Self> {
        let e = SparseBitvector::from_bits(x.sets().map(<[u32]>::is_empty));
        let inner = ReductionI::from_sets(x.sets().filter(|s| !s.is_empty()), x.sigma(), base)?;
        Ok(Self { e, inner })
    }

    pub(crate) fn from_parts(e: SparseBitvector, inner: ReductionI) -> Result<Self> {
        if e.len() - e.count_ones() != inner.n {
            return Err(Error::Container(
                "E zeros disagree with inner set count".into(),
            ));
        }
        Ok(Self { e, inner })
    }

    pub fn empty_set_vector(&self) -> &SparseBitvector {
        &self.e
    }

    pub fn inner(&self) -> &ReductionI {
        &self.inner
    }
}

impl SubsetRankSelect for ReductionIII {
    fn len(&self) -> usize {
        self.e.len()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn empty_sets(&self) -> usize {
        self.e.count_ones()
    }

    fn sigma(&self) -> usize {
        self.inner.sigma
    }

    fn subset_rank(&self, i: usize, c: usize) -> Result<usize> {
        check_index(i, self.e.len())?;
        check_symbol(c, self.inner.sigma)?;
        let k = i - self.e.rank1(i);
        Ok(self.inner.rank_unchecked(k, c))
    }

    fn subset_select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.inner.sigma)?;
        let k = self.inner.select_internal(j, c)?;
        self.e.select0(k + 1)
    }

    fn components(&self) -> Vec<Component> {
        let mut parts = self.inner.components();
        parts.push(Component::new("E", self.e.size_bits()));
        parts
    }
}
