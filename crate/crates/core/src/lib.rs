//! Rank and select on degenerate strings.
//!
//! A degenerate string is a sequence of sets `X_0, ..., X_{n-1}` over the
//! alphabet `[0, sigma)`. This crate answers
//!
//! - `subset_rank(i, c)`: how many of the first `i` sets contain `c`, and
//! - `subset_select(j, c)`: the index of the `j`-th set containing `c`,
//!
//! by reducing to rank/select on regular strings ([`reductions`]) or by the
//! dense-sparse decomposition ([`dsd`]). The string structures live in
//! [`strrank`], the bitvectors in [`bitvector`]. [`bounds`] computes the
//! counting lower bound on the space of any such structure.
//!
//! ```
//! use degen_core::{DegenerateString, SubsetIndex, StructureKind, Base, SubsetRankSelect};
//!
//! let x = DegenerateString::from_sets(4, [vec![0, 1, 2], vec![0, 3], vec![1], vec![2, 3]])?;
//! let idx = SubsetIndex::build(&x, StructureKind::ReductionIII, Base::BitPlane(8))?;
//! assert_eq!(idx.subset_rank(2, 0)?, 2);
//! assert_eq!(idx.subset_select(2, 2)?, 3);
//! # Ok::<(), degen_core::Error>(())
//! ```

pub mod bitvector;
pub mod bounds;
pub mod container;
pub mod degenerate;
pub mod dsd;
pub mod error;
pub mod index;
pub mod oracle;
pub mod reductions;
pub mod strrank;
pub mod verify;
pub mod workload;

pub use bitvector::{BitRankSelect, PlainBitvector, SparseBitvector};
pub use degenerate::{generate, DegenStats, DegenerateString, Format, Profile};
pub use dsd::{DsdStructure, KeptSymbol};
pub use error::{Error, Result};
pub use index::{Component, StructureKind, SubsetIndex, SubsetRankSelect};
pub use reductions::{ReductionI, ReductionII, ReductionIII};
pub use strrank::{Base, BitPlaneRank, StringIndex, SymbolRankSelect, WaveletTree};
pub use verify::{verify, Mismatch, Sample, VerifyReport};
pub use workload::{run_bench, BenchConfig, BenchResult, QueryKind};
