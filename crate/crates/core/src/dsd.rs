//! Dense-sparse decomposition.
//!
//! Each nonempty set keeps one symbol in a regular base string; every other
//! member `c` of set `i` sets bit `i` of the sparse vector `overflow[c]`.
//! Empty sets are removed from the base string and recorded in `E`, so a
//! subset-rank is three ranks: one on `E`, one on the base string and one
//! on an overflow vector.

use crate::bitvector::SparseBitvector;
use crate::degenerate::DegenerateString;
use crate::error::{check_index, check_symbol, Error, Result};
use crate::index::{Component, SubsetRankSelect};
use crate::strrank::{Base, StringIndex, SymbolRankSelect};

/// Which member of a set stays in the base string.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KeptSymbol {
    #[default]
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsdStructure {
    e: SparseBitvector,
    base: StringIndex,
    overflow: Vec<SparseBitvector>,
}

impl DsdStructure {
    pub fn build(x: &DegenerateString, base: Base) -> Result<Self> {
        Self::build_keeping(x, base, KeptSymbol::Min)
    }

    pub fn build_keeping(x: &DegenerateString, base: Base, keep: KeptSymbol) -> Result<Self> {
        let n = x.len();
        let e = SparseBitvector::from_bits(x.sets().map(<[u32]>::is_empty));
        let mut kept = Vec::with_capacity(n - e.count_ones());
        let mut extra: Vec<Vec<usize>> = vec![Vec::new(); x.sigma()];
        for (i, set) in x.sets().enumerate() {
            let picked = match keep {
                KeptSymbol::Min => set.iter().min(),
                KeptSymbol::Max => set.iter().max(),
            };
            let Some(&keep_sym) = picked else {
                continue;
            };
            kept.push(keep_sym);
            for &c in set.iter().filter(|&&c| c != keep_sym) {
                extra[c as usize].push(i);
            }
        }
        let overflow = extra
            .iter()
            .map(|ones| SparseBitvector::from_positions(n, ones))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            e,
            base: StringIndex::build(&kept, x.sigma(), base)?,
            overflow,
        })
    }

    pub(crate) fn from_parts(
        e: SparseBitvector,
        base: StringIndex,
        overflow: Vec<SparseBitvector>,
    ) -> Result<Self> {
        if base.len() != e.len() - e.count_ones() {
            return Err(Error::Container("DSD base length disagrees with E".into()));
        }
        if overflow.iter().any(|o| o.len() != e.len()) || base.sigma() < overflow.len() {
            return Err(Error::Container(
                "DSD overflow vector shape mismatch".into(),
            ));
        }
        Ok(Self { e, base, overflow })
    }

    pub fn empty_set_vector(&self) -> &SparseBitvector {
        &self.e
    }

    pub fn base(&self) -> &StringIndex {
        &self.base
    }

    pub fn overflow(&self) -> &[SparseBitvector] {
        &self.overflow
    }

    #[inline]
    fn rank_unchecked(&self, i: usize, c: usize) -> usize {
        let k = i - self.e.rank1(i);
        self.base.rank_unchecked(k, c) + self.overflow[c].rank1(i)
    }
}

impl SubsetRankSelect for DsdStructure {
    fn len(&self) -> usize {
        self.e.len()
    }

    fn size(&self) -> usize {
        self.base.len() + self.overflow.iter().map(|o| o.count_ones()).sum::<usize>()
    }

    fn empty_sets(&self) -> usize {
        self.e.count_ones()
    }

    fn sigma(&self) -> usize {
        self.overflow.len()
    }

    fn subset_rank(&self, i: usize, c: usize) -> Result<usize> {
        check_index(i, self.e.len())?;
        check_symbol(c, self.overflow.len())?;
        Ok(self.rank_unchecked(i, c))
    }

    /// Smallest `i` with `subset_rank(i + 1, c) = j`, by binary search over rank.
    fn subset_select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.overflow.len())?;
        let n = self.e.len();
        let total = self.rank_unchecked(n, c);
        if j == 0 || j > total {
            return Err(Error::NotFound {
                ordinal: j,
                what: format!("set containing {c}"),
                available: total,
            });
        }
        let (mut lo, mut hi) = (0, n - 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.rank_unchecked(mid + 1, c) >= j {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    fn components(&self) -> Vec<Component> {
        let mut parts = vec![
            Component::new("E", self.e.size_bits()),
            Component::new("base", self.base.size_bits()),
        ];
        parts.extend(
            self.overflow
                .iter()
                .enumerate()
                .map(|(c, o)| Component::new(format!("overflow[{c}]"), o.size_bits())),
        );
        parts
    }
}
