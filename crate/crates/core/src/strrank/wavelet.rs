use super::SymbolRankSelect;
use crate::bitvector::{BitBuf, PlainBitvector};
use crate::error::{check_index, check_symbol, Error, Result};

/// Balanced binary wavelet tree stored level by level.
///
/// Level `l` holds bit `l` (most significant first) of every symbol code,
/// with the symbols at that level stably grouped by their first `l` bits.
/// Each tree node is therefore a contiguous range of its level, and node
/// boundaries are recovered with rank on the fly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletTree {
    sigma: usize,
    len: usize,
    levels: Vec<PlainBitvector>,
}

/// Number of levels needed for codes in `[0, sigma)`.
pub fn levels_for(sigma: usize) -> usize {
    if sigma <= 1 {
        0
    } else {
        (usize::BITS - (sigma - 1).leading_zeros()) as usize
    }
}

impl WaveletTree {
    pub fn new(symbols: &[u32], sigma: usize) -> Result<Self> {
        if sigma == 0 && !symbols.is_empty() {
            return Err(Error::InvalidArgument(
                "alphabet size must be positive".into(),
            ));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= sigma) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as usize,
                sigma,
            });
        }
        let depth = levels_for(sigma);
        let mut levels = Vec::with_capacity(depth);
        let mut cur = symbols.to_vec();
        let mut zeros = Vec::new();
        let mut ones = Vec::new();
        for l in 0..depth {
            let shift = depth - 1 - l;
            let bits: BitBuf = cur.iter().map(|&s| (s >> shift) & 1 == 1).collect();
            levels.push(PlainBitvector::from_bitbuf(bits));
            if l + 1 == depth {
                break;
            }
            // stable split of each node by the current bit
            let mut next = Vec::with_capacity(cur.len());
            let mut start = 0;
            while start < cur.len() {
                let prefix = cur[start] >> (shift + 1);
                let mut end = start;
                zeros.clear();
                ones.clear();
                while end < cur.len() && cur[end] >> (shift + 1) == prefix {
                    if (cur[end] >> shift) & 1 == 1 {
                        ones.push(cur[end]);
                    } else {
                        zeros.push(cur[end]);
                    }
                    end += 1;
                }
                next.extend_from_slice(&zeros);
                next.extend_from_slice(&ones);
                start = end;
            }
            cur = next;
        }
        Ok(Self {
            sigma,
            len: symbols.len(),
            levels,
        })
    }

    /// Reassembles a tree from stored level bitvectors.
    pub(crate) fn from_levels(
        sigma: usize,
        len: usize,
        levels: Vec<PlainBitvector>,
    ) -> Result<Self> {
        if levels.len() != levels_for(sigma) || levels.iter().any(|l| l.len() != len) {
            return Err(Error::Container("wavelet tree level shape mismatch".into()));
        }
        Ok(Self { sigma, len, levels })
    }

    pub fn levels(&self) -> &[PlainBitvector] {
        &self.levels
    }

    #[inline]
    fn bit_of(&self, c: usize, level: usize) -> bool {
        (c >> (self.levels.len() - 1 - level)) & 1 == 1
    }
}

impl SymbolRankSelect for WaveletTree {
    fn len(&self) -> usize {
        self.len
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn access(&self, i: usize) -> Result<usize> {
        if i >= self.len {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.len,
            });
        }
        let (mut s, mut e, mut p) = (0, self.len, i);
        let mut c = 0;
        for bv in &self.levels {
            let (r1s, r1p, r1e) = (bv.rank1(s), bv.rank1(p), bv.rank1(e));
            let node_zeros = (e - s) - (r1e - r1s);
            c <<= 1;
            if bv.get(p) {
                c |= 1;
                p = s + node_zeros + (r1p - r1s);
                s += node_zeros;
            } else {
                p = s + (p - s) - (r1p - r1s);
                e = s + node_zeros;
            }
        }
        Ok(c)
    }

    #[inline]
    fn rank_unchecked(&self, i: usize, c: usize) -> usize {
        let (mut s, mut e, mut p) = (0, self.len, i);
        for (l, bv) in self.levels.iter().enumerate() {
            let (r1s, r1p, r1e) = (bv.rank1(s), bv.rank1(p), bv.rank1(e));
            let node_zeros = (e - s) - (r1e - r1s);
            if self.bit_of(c, l) {
                p = s + node_zeros + (r1p - r1s);
                s += node_zeros;
            } else {
                p = s + (p - s) - (r1p - r1s);
                e = s + node_zeros;
            }
        }
        p - s
    }

    fn rank(&self, i: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.sigma)?;
        check_index(i, self.len)?;
        Ok(self.rank_unchecked(i, c))
    }

    fn select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, self.sigma)?;
        let depth = self.levels.len();
        let mut starts = Vec::with_capacity(depth);
        let (mut s, mut e) = (0, self.len);
        for (l, bv) in self.levels.iter().enumerate() {
            starts.push(s);
            let (r1s, r1e) = (bv.rank1(s), bv.rank1(e));
            let node_zeros = (e - s) - (r1e - r1s);
            if self.bit_of(c, l) {
                s += node_zeros;
            } else {
                e = s + node_zeros;
            }
        }
        let available = e - s;
        if j == 0 || j > available {
            return Err(Error::NotFound {
                ordinal: j,
                what: format!("symbol {c}"),
                available,
            });
        }
        let mut offset = j - 1;
        for l in (0..depth).rev() {
            let bv = &self.levels[l];
            let start = starts[l];
            let abs = if self.bit_of(c, l) {
                bv.select_unchecked(bv.rank1(start) + offset + 1, true)
            } else {
                bv.select_unchecked(bv.rank0(start) + offset + 1, false)
            };
            offset = abs - start;
        }
        Ok(offset)
    }

    fn size_bits(&self) -> usize {
        // sigma and len fields
        2 * 64 + self.levels.iter().map(|l| l.size_bits()).sum::<usize>()
    }
}
