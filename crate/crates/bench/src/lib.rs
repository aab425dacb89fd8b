//! Fixtures shared by the criterion benches.

use degen_core::workload::QueryStream;
use degen_core::{
    generate, Base, DegenerateString, Profile, QueryKind, StructureKind, SubsetIndex,
};

/// Genomic-like instance used by every bench.
pub fn genomic_instance(n: usize) -> DegenerateString {
    generate(0xBE7C, n, 4, &Profile::GenomicLike).expect("valid generator parameters")
}

/// Every structure/base pair that can be built on `x`.
pub fn configurations(x: &DegenerateString) -> Vec<(StructureKind, Base)> {
    let bases = [
        Base::Wavelet,
        Base::BitPlane(4),
        Base::BitPlane(8),
        Base::BitPlane(16),
        Base::BitPlane(32),
    ];
    StructureKind::ALL
        .iter()
        .flat_map(|&k| bases.iter().map(move |&b| (k, b)))
        .filter(|&(k, b)| k.supports(x, b))
        .collect()
}

pub fn build(x: &DegenerateString, kind: StructureKind, base: Base) -> SubsetIndex {
    SubsetIndex::build(x, kind, base).expect("supported configuration")
}

/// `count` seeded queries of the given kind, generated ahead of timing.
pub fn queries(idx: &SubsetIndex, kind: QueryKind, count: usize) -> Vec<(usize, usize)> {
    QueryStream::for_index(7, kind, idx)
        .expect("instance has occurrences")
        .take(count)
        .collect()
}
