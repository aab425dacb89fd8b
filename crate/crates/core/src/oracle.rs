//! Brute-force subset-rank and subset-select straight from the definitions.
//!
//! Linear in the input per query; meant for tests and verification only.

use crate::degenerate::DegenerateString;
use crate::error::{check_index, check_symbol, Error, Result};

/// Number of sets among the first `i` that contain `c`.
pub fn oracle_rank(x: &DegenerateString, i: usize, c: usize) -> Result<usize> {
    check_index(i, x.len())?;
    check_symbol(c, x.sigma())?;
    Ok(x.sets()
        .take(i)
        .filter(|set| set.contains(&(c as u32)))
        .count())
}

/// Index of the `j`-th set (1-based `j`) containing `c`.
pub fn oracle_select(x: &DegenerateString, j: usize, c: usize) -> Result<usize> {
    check_symbol(c, x.sigma())?;
    let mut seen = 0;
    for (i, set) in x.sets().enumerate() {
        if set.contains(&(c as u32)) {
            seen += 1;
            if seen == j {
                return Ok(i);
            }
        }
    }
    Err(Error::NotFound {
        ordinal: j,
        what: format!("set containing {c}"),
        available: seen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degenerate::{generate, Profile};

    fn running_example() -> DegenerateString {
        DegenerateString::from_sets(4, [vec![0, 1, 2], vec![0, 3], vec![1], vec![3, 2]]).unwrap()
    }

    #[test]
    fn running_example_queries() {
        let x = running_example();
        assert_eq!(oracle_rank(&x, 2, 0).unwrap(), 2);
        assert_eq!(oracle_select(&x, 2, 2).unwrap(), 3);
        assert_eq!(oracle_select(&x, 1, 0).unwrap(), 0);
        for c in 0..4 {
            assert_eq!(oracle_rank(&x, 0, c).unwrap(), 0);
        }
        assert!(oracle_select(&x, 3, 2).is_err());
        assert!(oracle_select(&x, 0, 2).is_err());
        assert!(oracle_rank(&x, 5, 0).is_err());
        assert!(oracle_rank(&x, 1, 4).is_err());
    }

    #[test]
    fn totals_match_histogram_recount() {
        let x = generate(9, 500, 6, &Profile::Uniform(Vec::new())).unwrap();
        let mut per_symbol = [0; 6];
        for &s in x.concatenated() {
            per_symbol[s as usize] += 1;
        }
        for (c, &total) in per_symbol.iter().enumerate() {
            assert_eq!(oracle_rank(&x, x.len(), c).unwrap(), total);
            for j in 1..=total {
                let i = oracle_select(&x, j, c).unwrap();
                assert_eq!(oracle_rank(&x, i + 1, c).unwrap(), j);
            }
        }
    }
}
