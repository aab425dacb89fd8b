//! The common interface of all subset rank/select structures.

use std::fmt;
use std::str::FromStr;

use crate::degenerate::DegenerateString;
use crate::dsd::DsdStructure;
use crate::error::{Error, Result};
use crate::reductions::{ReductionI, ReductionII, ReductionIII};
use crate::strrank::Base;

/// A named part of a structure and its size in bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub bits: usize,
}

impl Component {
    pub fn new(name: impl Into<String>, bits: usize) -> Self {
        Self {
            name: name.into(),
            bits,
        }
    }
}

/// Subset rank and select over a degenerate string.
///
/// Set indices are 0-based; `subset_rank(i, c)` counts sets among the first
/// `i` containing `c`, and `subset_select(j, c)` returns the index of the
/// `j`-th (1-based) set containing `c`.
pub trait SubsetRankSelect {
    /// Number of sets, `n`.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total set size, `N`.
    fn size(&self) -> usize;

    /// Number of empty sets, `n0`.
    fn empty_sets(&self) -> usize;

    fn sigma(&self) -> usize;

    fn subset_rank(&self, i: usize, c: usize) -> Result<usize>;

    fn subset_select(&self, j: usize, c: usize) -> Result<usize>;

    /// Per-component sizes; they add up to [`size_bits`](Self::size_bits).
    fn components(&self) -> Vec<Component>;

    fn size_bits(&self) -> usize {
        self.components().iter().map(|c| c.bits).sum()
    }
}

/// The structure families that can be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    ReductionI,
    ReductionII,
    ReductionIII,
    Dsd,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] = [
        StructureKind::ReductionI,
        StructureKind::ReductionII,
        StructureKind::ReductionIII,
        StructureKind::Dsd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::ReductionI => "reduction-i",
            StructureKind::ReductionII => "reduction-ii",
            StructureKind::ReductionIII => "reduction-iii",
            StructureKind::Dsd => "dsd",
        }
    }

    /// Whether this kind can index `x` on `base`.
    pub fn supports(self, x: &DegenerateString, base: Base) -> bool {
        if self == StructureKind::ReductionI && x.empty_sets() > 0 {
            return false;
        }
        // reduction II always indexes one extra sentinel symbol
        let alphabet = match self {
            StructureKind::ReductionII => x.sigma() + 1,
            _ => x.sigma(),
        };
        base.max_sigma().is_none_or(|max| alphabet <= max)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown structure {s:?}")))
    }
}

/// Any of the built structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetIndex {
    ReductionI(ReductionI),
    ReductionII(ReductionII),
    ReductionIII(ReductionIII),
    Dsd(DsdStructure),
}

impl SubsetIndex {
    pub fn build(x: &DegenerateString, kind: StructureKind, base: Base) -> Result<Self> {
        Ok(match kind {
            StructureKind::ReductionI => SubsetIndex::ReductionI(ReductionI::build(x, base)?),
            StructureKind::ReductionII => SubsetIndex::ReductionII(ReductionII::build(x, base)?),
            StructureKind::ReductionIII => SubsetIndex::ReductionIII(ReductionIII::build(x, base)?),
            StructureKind::Dsd => SubsetIndex::Dsd(DsdStructure::build(x, base)?),
        })
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            SubsetIndex::ReductionI(_) => StructureKind::ReductionI,
            SubsetIndex::ReductionII(_) => StructureKind::ReductionII,
            SubsetIndex::ReductionIII(_) => StructureKind::ReductionIII,
            SubsetIndex::Dsd(_) => StructureKind::Dsd,
        }
    }

    pub fn base(&self) -> Base {
        match self {
            SubsetIndex::ReductionI(r) => r.string_index().base(),
            SubsetIndex::ReductionII(r) => r.inner().string_index().base(),
            SubsetIndex::ReductionIII(r) => r.inner().string_index().base(),
            SubsetIndex::Dsd(d) => d.base().base(),
        }
    }

    fn inner(&self) -> &dyn SubsetRankSelect {
        match self {
            SubsetIndex::ReductionI(r) => r,
            SubsetIndex::ReductionII(r) => r,
            SubsetIndex::ReductionIII(r) => r,
            SubsetIndex::Dsd(d) => d,
        }
    }
}

impl SubsetRankSelect for SubsetIndex {
    fn len(&self) -> usize {
        self.inner().len()
    }

    fn size(&self) -> usize {
        self.inner().size()
    }

    fn empty_sets(&self) -> usize {
        self.inner().empty_sets()
    }

    fn sigma(&self) -> usize {
        self.inner().sigma()
    }

    #[inline]
    fn subset_rank(&self, i: usize, c: usize) -> Result<usize> {
        match self {
            SubsetIndex::ReductionI(r) => r.subset_rank(i, c),
            SubsetIndex::ReductionII(r) => r.subset_rank(i, c),
            SubsetIndex::ReductionIII(r) => r.subset_rank(i, c),
            SubsetIndex::Dsd(d) => d.subset_rank(i, c),
        }
    }

    fn subset_select(&self, j: usize, c: usize) -> Result<usize> {
        self.inner().subset_select(j, c)
    }

    fn components(&self) -> Vec<Component> {
        self.inner().components()
    }
}
