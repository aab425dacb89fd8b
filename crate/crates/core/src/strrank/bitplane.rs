use super::SymbolRankSelect;
use crate::bitvector::bits::{select_in_word, WORD_BITS};
use crate::error::{check_index, check_symbol, Error, Result};

/// Symbols per block at block parameter 1.
pub const SYMBOLS_PER_UNIT: usize = 512;
/// Supported block parameters.
pub const BLOCK_PARAMS: [usize; 4] = [4, 8, 16, 32];
pub const DEFAULT_BLOCK_PARAM: usize = 8;

const WORDS_PER_UNIT: usize = SYMBOLS_PER_UNIT / WORD_BITS;

/// Rank/select over a string on `{0, 1, 2, 3}` split into two bit planes.
///
/// The string is cut into blocks of `512 * block_param` symbols. Each block
/// boundary stores four absolute 64-bit counters; a query adds the counter to
/// a masked popcount over the block's words, where a symbol `c = (h, l)`
/// matches wherever `!(high ^ fill(h)) & !(low ^ fill(l))` has a bit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitPlaneRank {
    len: usize,
    block_param: usize,
    low: Vec<u64>,
    high: Vec<u64>,
    /// `counts[k][c]` = occurrences of `c` in the first `k` blocks; `nblocks + 1` entries.
    counts: Vec<[u64; 4]>,
}

#[inline]
fn fill(bit: usize) -> u64 {
    0u64.wrapping_sub((bit & 1) as u64)
}

#[inline]
fn match_word(low: u64, high: u64, fill_low: u64, fill_high: u64) -> u64 {
    !(high ^ fill_high) & !(low ^ fill_low)
}

pub fn check_block_param(block_param: usize) -> Result<()> {
    if BLOCK_PARAMS.contains(&block_param) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "block parameter {block_param} not in {BLOCK_PARAMS:?}"
        )))
    }
}

impl BitPlaneRank {
    pub fn new(symbols: &[u32], block_param: usize) -> Result<Self> {
        check_block_param(block_param)?;
        if let Some(&bad) = symbols.iter().find(|&&s| s >= 4) {
            return Err(Error::UnsupportedAlphabet {
                sigma: bad as usize + 1,
                max: 4,
                structure: "bit-plane rank",
            });
        }
        let words = symbols.len().div_ceil(WORD_BITS);
        let mut low = vec![0u64; words];
        let mut high = vec![0u64; words];
        for (p, &s) in symbols.iter().enumerate() {
            low[p / WORD_BITS] |= u64::from(s & 1) << (p % WORD_BITS);
            high[p / WORD_BITS] |= u64::from(s >> 1) << (p % WORD_BITS);
        }
        Self::from_planes(symbols.len(), block_param, low, high)
    }

    /// Builds counters for already-split planes.
    pub(crate) fn from_planes(
        len: usize,
        block_param: usize,
        low: Vec<u64>,
        high: Vec<u64>,
    ) -> Result<Self> {
        check_block_param(block_param)?;
        let words = len.div_ceil(WORD_BITS);
        if low.len() != words || high.len() != words {
            return Err(Error::Container("bit plane length mismatch".into()));
        }
        let mut bp = Self {
            len,
            block_param,
            low,
            high,
            counts: Vec::new(),
        };
        if !len.is_multiple_of(WORD_BITS) {
            let mask = (1u64 << (len % WORD_BITS)) - 1;
            bp.low[words - 1] &= mask;
            bp.high[words - 1] &= mask;
        }
        let block_words = bp.block_words();
        let nblocks = len.div_ceil(bp.block_symbols());
        bp.counts = Vec::with_capacity(nblocks + 1);
        let mut acc = [0u64; 4];
        bp.counts.push(acc);
        for k in 0..nblocks {
            let range = k * block_words..((k + 1) * block_words).min(words);
            for w in range {
                let valid = bp.valid_mask(w);
                for (c, slot) in acc.iter_mut().enumerate() {
                    let m = match_word(bp.low[w], bp.high[w], fill(c), fill(c >> 1)) & valid;
                    *slot += u64::from(m.count_ones());
                }
            }
            bp.counts.push(acc);
        }
        Ok(bp)
    }

    pub fn block_param(&self) -> usize {
        self.block_param
    }

    pub fn block_symbols(&self) -> usize {
        SYMBOLS_PER_UNIT * self.block_param
    }

    fn block_words(&self) -> usize {
        WORDS_PER_UNIT * self.block_param
    }

    pub fn low_plane(&self) -> &[u64] {
        &self.low
    }

    pub fn high_plane(&self) -> &[u64] {
        &self.high
    }

    /// Absolute counters at block boundary `k`.
    pub fn block_counts(&self, k: usize) -> Option<[u64; 4]> {
        self.counts.get(k).copied()
    }

    /// Mask of the positions of word `w` that lie inside the string.
    #[inline]
    fn valid_mask(&self, w: usize) -> u64 {
        let end = (w + 1) * WORD_BITS;
        if end <= self.len {
            u64::MAX
        } else {
            (1u64 << (self.len % WORD_BITS)) - 1
        }
    }

    #[inline]
    fn scan(&self, from: usize, to: usize, fill_low: u64, fill_high: u64) -> usize {
        self.low[from..to]
            .iter()
            .zip(&self.high[from..to])
            .map(|(&l, &h)| match_word(l, h, fill_low, fill_high).count_ones() as usize)
            .sum()
    }
}

impl SymbolRankSelect for BitPlaneRank {
    fn len(&self) -> usize {
        self.len
    }

    fn sigma(&self) -> usize {
        4
    }

    fn access(&self, i: usize) -> Result<usize> {
        if i >= self.len {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.len,
            });
        }
        let (w, o) = (i / WORD_BITS, i % WORD_BITS);
        let l = (self.low[w] >> o) & 1;
        let h = (self.high[w] >> o) & 1;
        Ok((h << 1 | l) as usize)
    }

    #[inline]
    fn rank_unchecked(&self, i: usize, c: usize) -> usize {
        let k = i / self.block_symbols();
        let mut r = self.counts[k][c] as usize;
        let (fill_low, fill_high) = (fill(c), fill(c >> 1));
        let first = k * self.block_words();
        let last = i / WORD_BITS;
        r += self.scan(first, last, fill_low, fill_high);
        let off = i % WORD_BITS;
        if off != 0 {
            let m = match_word(self.low[last], self.high[last], fill_low, fill_high);
            r += (m & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    fn rank(&self, i: usize, c: usize) -> Result<usize> {
        check_symbol(c, 4)?;
        check_index(i, self.len)?;
        Ok(self.rank_unchecked(i, c))
    }

    fn select(&self, j: usize, c: usize) -> Result<usize> {
        check_symbol(c, 4)?;
        let total = self.counts.last().map_or(0, |t| t[c] as usize);
        if j == 0 || j > total {
            return Err(Error::NotFound {
                ordinal: j,
                what: format!("symbol {c}"),
                available: total,
            });
        }
        // last block whose leading counter is < j
        let nblocks = self.counts.len() - 1;
        let k = self.counts[..nblocks].partition_point(|cnt| (cnt[c] as usize) < j) - 1;
        let mut rem = j - self.counts[k][c] as usize;
        let (fill_low, fill_high) = (fill(c), fill(c >> 1));
        let end = ((k + 1) * self.block_words()).min(self.low.len());
        for w in k * self.block_words()..end {
            let m = match_word(self.low[w], self.high[w], fill_low, fill_high) & self.valid_mask(w);
            let ones = m.count_ones() as usize;
            if rem <= ones {
                return Ok(w * WORD_BITS + select_in_word(m, (rem - 1) as u32) as usize);
            }
            rem -= ones;
        }
        unreachable!("block counters guarantee the occurrence lies in block {k}")
    }

    fn size_bits(&self) -> usize {
        // len and block parameter fields
        2 * 64 + WORD_BITS * (self.low.len() + self.high.len()) + 4 * 64 * self.counts.len()
    }
}
