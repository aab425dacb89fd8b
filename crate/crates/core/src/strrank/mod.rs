//! Rank and select over regular strings.

mod bitplane;
mod wavelet;

pub use bitplane::{
    check_block_param, BitPlaneRank, BLOCK_PARAMS, DEFAULT_BLOCK_PARAM, SYMBOLS_PER_UNIT,
};
pub use wavelet::{levels_for, WaveletTree};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Rank/select over a string of symbols in `[0, sigma)`.
pub trait SymbolRankSelect {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sigma(&self) -> usize;

    fn access(&self, i: usize) -> Result<usize>;

    /// Occurrences of `c` in `[0, i)`.
    fn rank(&self, i: usize, c: usize) -> Result<usize>;

    /// Same as [`rank`](Self::rank) with the range checks left to the caller.
    fn rank_unchecked(&self, i: usize, c: usize) -> usize;

    /// Position of the `j`-th occurrence of `c`, `j >= 1`.
    fn select(&self, j: usize, c: usize) -> Result<usize>;

    fn size_bits(&self) -> usize;
}

/// Which string structure backs a degenerate-string index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Wavelet,
    /// Bit-plane rank with the given block parameter.
    BitPlane(usize),
}

impl Base {
    /// Largest alphabet the base can index, if bounded.
    pub fn max_sigma(self) -> Option<usize> {
        match self {
            Base::Wavelet => None,
            Base::BitPlane(_) => Some(4),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Wavelet => f.write_str("wavelet"),
            Base::BitPlane(i) => write!(f, "bitplane({i})"),
        }
    }
}

impl FromStr for Base {
    type Err = Error;

    /// Accepts `wavelet`, `bitplane` (default block parameter) and `bitplane(i)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "wavelet" {
            return Ok(Base::Wavelet);
        }
        if s == "bitplane" {
            return Ok(Base::BitPlane(DEFAULT_BLOCK_PARAM));
        }
        if let Some(inner) = s
            .strip_prefix("bitplane(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let i: usize = inner
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad block parameter in {s:?}")))?;
            check_block_param(i)?;
            return Ok(Base::BitPlane(i));
        }
        Err(Error::InvalidArgument(format!("unknown base {s:?}")))
    }
}

/// A built string structure of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StringIndex {
    Wavelet(WaveletTree),
    BitPlane(BitPlaneRank),
}

impl StringIndex {
    pub fn build(symbols: &[u32], sigma: usize, base: Base) -> Result<Self> {
        match base {
            Base::Wavelet => Ok(StringIndex::Wavelet(WaveletTree::new(symbols, sigma)?)),
            Base::BitPlane(i) => {
                if sigma > 4 {
                    return Err(Error::UnsupportedAlphabet {
                        sigma,
                        max: 4,
                        structure: "bit-plane rank",
                    });
                }
                Ok(StringIndex::BitPlane(BitPlaneRank::new(symbols, i)?))
            }
        }
    }

    pub fn base(&self) -> Base {
        match self {
            StringIndex::Wavelet(_) => Base::Wavelet,
            StringIndex::BitPlane(bp) => Base::BitPlane(bp.block_param()),
        }
    }

    fn inner(&self) -> &dyn SymbolRankSelect {
        match self {
            StringIndex::Wavelet(wt) => wt,
            StringIndex::BitPlane(bp) => bp,
        }
    }
}

impl SymbolRankSelect for StringIndex {
    fn len(&self) -> usize {
        self.inner().len()
    }

    fn sigma(&self) -> usize {
        self.inner().sigma()
    }

    fn access(&self, i: usize) -> Result<usize> {
        self.inner().access(i)
    }

    fn rank(&self, i: usize, c: usize) -> Result<usize> {
        self.inner().rank(i, c)
    }

    #[inline]
    fn rank_unchecked(&self, i: usize, c: usize) -> usize {
        match self {
            StringIndex::Wavelet(wt) => wt.rank_unchecked(i, c),
            StringIndex::BitPlane(bp) => bp.rank_unchecked(i, c),
        }
    }

    fn select(&self, j: usize, c: usize) -> Result<usize> {
        self.inner().select(j, c)
    }

    fn size_bits(&self) -> usize {
        self.inner().size_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // A=0, C=1, G=2, T=3
    fn dna(s: &str) -> Vec<u32> {
        s.bytes()
            .map(|b| match b {
                b'A' => 0,
                b'C' => 1,
                b'G' => 2,
                b'T' => 3,
                _ => panic!("not DNA"),
            })
            .collect()
    }

    fn scan_rank(s: &[u32], i: usize, c: usize) -> usize {
        s[..i].iter().filter(|&&x| x as usize == c).count()
    }

    fn scan_select(s: &[u32], j: usize, c: usize) -> Option<usize> {
        s.iter()
            .enumerate()
            .filter(|(_, &x)| x as usize == c)
            .nth(j.checked_sub(1)?)
            .map(|(p, _)| p)
    }

    fn check_against_scan(idx: &dyn SymbolRankSelect, s: &[u32], sigma: usize) {
        for i in 0..=s.len() {
            for c in 0..sigma {
                assert_eq!(idx.rank(i, c).unwrap(), scan_rank(s, i, c), "rank({i},{c})");
            }
        }
        for (p, &x) in s.iter().enumerate() {
            assert_eq!(idx.access(p).unwrap(), x as usize);
        }
        for c in 0..sigma {
            let total = scan_rank(s, s.len(), c);
            for j in 0..=total + 1 {
                match scan_select(s, j, c) {
                    Some(p) => assert_eq!(idx.select(j, c).unwrap(), p, "select({j},{c})"),
                    None => assert!(idx.select(j, c).is_err()),
                }
            }
        }
    }

    #[test]
    fn running_example_string() {
        let s = dna("ACGATCTG");
        let wt = WaveletTree::new(&s, 4).unwrap();
        let bp = BitPlaneRank::new(&s, 8).unwrap();
        for idx in [&wt as &dyn SymbolRankSelect, &bp] {
            assert_eq!(idx.rank(5, 0).unwrap(), 2);
            assert_eq!(idx.select(2, 2).unwrap(), 7);
            assert_eq!(idx.rank(0, 3).unwrap(), 0);
        }
    }

    #[test]
    fn single_symbol() {
        let wt = WaveletTree::new(&[2], 3).unwrap();
        let bp = BitPlaneRank::new(&[2], 4).unwrap();
        assert_eq!(wt.select(1, 2).unwrap(), 0);
        assert_eq!(bp.select(1, 2).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_queries() {
        let s = dna("ACGT");
        let wt = WaveletTree::new(&s, 4).unwrap();
        let bp = BitPlaneRank::new(&s, 4).unwrap();
        for idx in [&wt as &dyn SymbolRankSelect, &bp] {
            assert!(matches!(idx.rank(5, 0), Err(Error::OutOfBounds { .. })));
            assert!(matches!(
                idx.rank(1, 4),
                Err(Error::SymbolOutOfRange { .. })
            ));
            assert!(matches!(idx.select(2, 0), Err(Error::NotFound { .. })));
            assert!(matches!(idx.select(0, 0), Err(Error::NotFound { .. })));
        }
        assert!(WaveletTree::new(&[5], 4).is_err());
        assert!(BitPlaneRank::new(&[4], 8).is_err());
        assert!(BitPlaneRank::new(&s, 5).is_err());
    }

    #[test]
    fn random_sigma_11_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s: Vec<u32> = (0..300).map(|_| rng.random_range(0..11)).collect();
        check_against_scan(&WaveletTree::new(&s, 11).unwrap(), &s, 11);
    }

    #[test]
    fn odd_alphabets_and_unary_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sigma in [1usize, 2, 3, 5, 7, 64, 100] {
            let s: Vec<u32> = (0..257)
                .map(|_| rng.random_range(0..sigma as u32))
                .collect();
            check_against_scan(&WaveletTree::new(&s, sigma).unwrap(), &s, sigma);
        }
        let empty = WaveletTree::new(&[], 4).unwrap();
        assert_eq!(empty.rank(0, 2).unwrap(), 0);
    }

    #[test]
    fn bitplane_block_boundaries_equal_counters() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s: Vec<u32> = (0..10_000).map(|_| rng.random_range(0..4)).collect();
        for i in BLOCK_PARAMS {
            let bp = BitPlaneRank::new(&s, i).unwrap();
            let bs = bp.block_symbols();
            for k in 0..=s.len() / bs {
                let counts = bp.block_counts(k).unwrap();
                assert_eq!(counts.iter().sum::<u64>() as usize, k * bs);
                for (c, &cnt) in counts.iter().enumerate() {
                    assert_eq!(bp.rank(k * bs, c).unwrap(), cnt as usize);
                    assert_eq!(cnt as usize, scan_rank(&s, k * bs, c));
                }
            }
        }
    }

    #[test]
    fn bitplane_agrees_with_wavelet_on_large_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(100_000);
        let s: Vec<u32> = (0..100_000).map(|_| rng.random_range(0..4)).collect();
        let wt = WaveletTree::new(&s, 4).unwrap();
        let bp = BitPlaneRank::new(&s, DEFAULT_BLOCK_PARAM).unwrap();
        for _ in 0..10_000 {
            let i = rng.random_range(0..=s.len());
            let c = rng.random_range(0..4);
            assert_eq!(bp.rank(i, c).unwrap(), wt.rank(i, c).unwrap());
            let total = wt.rank(s.len(), c).unwrap();
            let j = rng.random_range(1..=total);
            assert_eq!(bp.select(j, c).unwrap(), wt.select(j, c).unwrap());
        }
    }

    #[test]
    fn sizes_within_budget() {
        let len = 1usize << 20;
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let s: Vec<u32> = (0..len).map(|_| rng.random_range(0..4)).collect();
        let wt = WaveletTree::new(&s, 4).unwrap().size_bits() as f64;
        assert!(
            wt >= 2.0 * len as f64 && wt <= 2.6 * len as f64 + 1024.0,
            "{wt}"
        );
        let bp = BitPlaneRank::new(&s, 8).unwrap().size_bits() as f64;
        assert!(bp >= 2.0 * len as f64 && bp <= 2.2 * len as f64, "{bp}");
        let empty = WaveletTree::new(&[], 4).unwrap();
        assert!(empty.size_bits() < 1024);
        assert!(BitPlaneRank::new(&[], 8).unwrap().size_bits() < 1024);
    }

    #[test]
    fn base_parsing() {
        assert_eq!("wavelet".parse::<Base>().unwrap(), Base::Wavelet);
        assert_eq!("bitplane".parse::<Base>().unwrap(), Base::BitPlane(8));
        assert_eq!("bitplane(32)".parse::<Base>().unwrap(), Base::BitPlane(32));
        assert!("bitplane(3)".parse::<Base>().is_err());
        for b in [Base::Wavelet, Base::BitPlane(16)] {
            assert_eq!(b.to_string().parse::<Base>().unwrap(), b);
        }
    }

    proptest! {
        #[test]
        fn bitplane_and_wavelet_agree(
            s in proptest::collection::vec(0u32..4, 0..2048),
            param in proptest::sample::select(BLOCK_PARAMS.to_vec()),
        ) {
            let wt = WaveletTree::new(&s, 4).unwrap();
            let bp = BitPlaneRank::new(&s, param).unwrap();
            let bp4 = BitPlaneRank::new(&s, 4).unwrap();
            for i in 0..=s.len() {
                for c in 0..4 {
                    let r = wt.rank(i, c).unwrap();
                    prop_assert_eq!(bp.rank(i, c).unwrap(), r);
                    prop_assert_eq!(bp4.rank(i, c).unwrap(), r);
                }
            }
            let mut total = 0;
            for c in 0..4 {
                let n = wt.rank(s.len(), c).unwrap();
                total += n;
                for j in 1..=n {
                    let p = wt.select(j, c).unwrap();
                    prop_assert_eq!(bp.select(j, c).unwrap(), p);
                    prop_assert_eq!(wt.rank(p, c).unwrap(), j - 1);
                }
            }
            prop_assert_eq!(total, s.len());
        }
    }
}
