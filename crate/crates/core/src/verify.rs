//! Compares a structure's answers with the brute-force oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degenerate::DegenerateString;
use crate::index::SubsetRankSelect;
use crate::oracle::{oracle_rank, oracle_select};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    Exhaustive,
    /// `count` random rank and `count` random select queries.
    Random {
        count: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub query: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, got {}",
            self.query, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn show<E: fmt::Display>(r: &Result<usize, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

struct Checker<'a> {
    x: &'a DegenerateString,
    idx: &'a dyn SubsetRankSelect,
    checked: usize,
}

impl Checker<'_> {
    fn rank(&mut self, i: usize, c: usize) -> Option<Mismatch> {
        self.checked += 1;
        let expected = oracle_rank(self.x, i, c);
        let got = self.idx.subset_rank(i, c);
        (expected.as_ref().ok() != got.as_ref().ok()).then(|| Mismatch {
            query: format!("subset_rank({i}, {c})"),
            expected: show(&expected),
            got: show(&got),
        })
    }

    fn select(&mut self, j: usize, c: usize) -> Option<Mismatch> {
        self.checked += 1;
        let expected = oracle_select(self.x, j, c);
        let got = self.idx.subset_select(j, c);
        (expected.as_ref().ok() != got.as_ref().ok()).then(|| Mismatch {
            query: format!("subset_select({j}, {c})"),
            expected: show(&expected),
            got: show(&got),
        })
    }
}

/// Checks `idx` against the oracle on `x`; stops at the first disagreement.
///
/// Exhaustive mode asks every `(i, c)` with `i <= n` and every `(j, c)` with
/// `j` up to one past the number of sets containing `c`.
pub fn verify(x: &DegenerateString, idx: &dyn SubsetRankSelect, sample: Sample) -> VerifyReport {
    let mut ck = Checker { x, idx, checked: 0 };
    let shape = (x.len(), x.size(), x.empty_sets(), x.sigma());
    let got_shape = (idx.len(), idx.size(), idx.empty_sets(), idx.sigma());
    if shape != got_shape {
        return VerifyReport {
            checked: 0,
            first_mismatch: Some(Mismatch {
                query: "shape (n, N, n0, sigma)".into(),
                expected: format!("{shape:?}"),
                got: format!("{got_shape:?}"),
            }),
        };
    }
    let n = x.len();
    let sigma = x.sigma();
    let totals: Vec<usize> = (0..sigma)
        .map(|c| oracle_rank(x, n, c).unwrap_or(0))
        .collect();
    let mismatch = match sample {
        Sample::Exhaustive => (0..sigma).find_map(|c| {
            (0..=n)
                .find_map(|i| ck.rank(i, c))
                .or_else(|| (1..=totals[c] + 1).find_map(|j| ck.select(j, c)))
        }),
        Sample::Random { count, seed } if sigma > 0 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).find_map(|_| {
                let c = rng.random_range(0..sigma);
                let i = rng.random_range(0..=n);
                let j = rng.random_range(1..=totals[c] + 1);
                ck.rank(i, c).or_else(|| ck.select(j, c))
            })
        }
        Sample::Random { .. } => None,
    };
    VerifyReport {
        checked: ck.checked,
        first_mismatch: mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degenerate::{generate, Profile};
    use crate::index::{StructureKind, SubsetIndex};
    use crate::strrank::Base;

    #[test]
    fn passes_on_correct_structures() {
        let x = generate(8, 120, 4, &Profile::GenomicLike).unwrap();
        let idx = SubsetIndex::build(&x, StructureKind::ReductionIII, Base::BitPlane(8)).unwrap();
        let report = verify(&x, &idx, Sample::Exhaustive);
        assert!(report.passed(), "{:?}", report.first_mismatch);
        assert!(report.checked >= 4 * 121);
        let r = verify(
            &x,
            &idx,
            Sample::Random {
                count: 500,
                seed: 1,
            },
        );
        assert!(r.passed());
        assert_eq!(r.checked, 1000);
    }

    #[test]
    fn reports_counterexample_for_wrong_input() {
        let x = generate(8, 120, 4, &Profile::GenomicLike).unwrap();
        let other = generate(9, 120, 4, &Profile::GenomicLike).unwrap();
        let idx = SubsetIndex::build(&other, StructureKind::Dsd, Base::Wavelet).unwrap();
        let report = verify(&x, &idx, Sample::Exhaustive);
        assert!(!report.passed());
        let m = report.first_mismatch.unwrap();
        assert!(m.query.starts_with("shape") || m.query.starts_with("subset_"));
    }
}
