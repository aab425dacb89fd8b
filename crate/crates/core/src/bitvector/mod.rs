//! Dense and sparse bitvectors with rank and select.
//!
//! All ranks count over the half-open prefix `[0, i)` and all selects take a
//! 1-based ordinal and return a 0-based position.

pub(crate) mod bits;
mod plain;
mod sparse;

pub use bits::BitBuf;
pub use plain::{PlainBitvector, BLOCK_BITS, SELECT_SAMPLE_RATE, SUPERBLOCK_BITS};
pub use sparse::SparseBitvector;

use crate::error::Result;

/// Rank/select over a static bit sequence.
pub trait BitRankSelect {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn count_ones(&self) -> usize;

    fn get(&self, i: usize) -> Result<bool>;

    /// Number of positions `p < i` holding `bit`. Errors if `i > len`.
    fn rank(&self, i: usize, bit: bool) -> Result<usize>;

    /// Position of the `j`-th occurrence of `bit`, `j >= 1`.
    fn select(&self, j: usize, bit: bool) -> Result<usize>;

    /// Total bits of payload and support structures.
    fn size_bits(&self) -> usize;
}
