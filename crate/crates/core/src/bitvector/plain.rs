use super::bits::{select_in_word, BitBuf, WORD_BITS};
use super::BitRankSelect;
use crate::error::{check_index, Error, Result};

/// Bits covered by one absolute rank counter.
pub const SUPERBLOCK_BITS: usize = 512;
/// Bits covered by one relative rank counter.
pub const BLOCK_BITS: usize = 64;
/// Every `SELECT_SAMPLE_RATE`-th occurrence of each bit value is sampled.
pub const SELECT_SAMPLE_RATE: usize = 1024;

const WORDS_PER_SUPERBLOCK: usize = SUPERBLOCK_BITS / WORD_BITS;
const REL_BITS: usize = 9;
const REL_MASK: u64 = (1 << REL_BITS) - 1;

/// Dense bitvector with constant-time rank and sampled select.
///
/// Rank uses one absolute 64-bit counter per 512-bit superblock and seven
/// 9-bit relative counters (packed into a single word) for the 64-bit blocks
/// inside it; both live in one 128-bit entry per superblock. Select jumps to
/// the superblock holding every 1024-th occurrence, binary searches the absolute counters between two samples and
/// finishes with the packed relative counters and an in-word select.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainBitvector {
    len: usize,
    words: Vec<u64>,
    /// Per superblock `s`: ones in `bits[0, s * 512)`, then seven packed 9-bit
    /// counts of ones in its first `k` words, `k = 1..=7`. A trailing entry holds the total.
    counters: Vec<[u64; 2]>,
    select1_samples: Vec<u32>,
    select0_samples: Vec<u32>,
}

impl Default for PlainBitvector {
    fn default() -> Self {
        Self::from_words(Vec::new(), 0)
    }
}

impl PlainBitvector {
    /// Builds from packed little-endian words. Bits at positions `>= len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % WORD_BITS)) - 1;
        }
        let mut bv = Self {
            len,
            words,
            counters: Vec::new(),
            select1_samples: Vec::new(),
            select0_samples: Vec::new(),
        };
        bv.build_index();
        bv
    }

    pub fn from_bitbuf(buf: BitBuf) -> Self {
        let (words, len) = buf.into_parts();
        Self::from_words(words, len)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Self::from_bitbuf(bits.into_iter().collect())
    }

    fn build_index(&mut self) {
        let n_super = self.words.len().div_ceil(WORDS_PER_SUPERBLOCK);
        self.counters = Vec::with_capacity(n_super + 1);
        let mut total = 0u64;
        for chunk in self.words.chunks(WORDS_PER_SUPERBLOCK) {
            let mut rel = 0u64;
            let mut packed = 0u64;
            for k in 1..WORDS_PER_SUPERBLOCK {
                rel += chunk.get(k - 1).map_or(0, |w| u64::from(w.count_ones()));
                packed |= rel << (REL_BITS * (k - 1));
            }
            self.counters.push([total, packed]);
            total += chunk.iter().map(|w| u64::from(w.count_ones())).sum::<u64>();
        }
        self.counters.push([total, 0]);

        let ones = total as usize;
        let zeros = self.len - ones;
        self.select1_samples = self.sample_superblocks(ones, true);
        self.select0_samples = self.sample_superblocks(zeros, false);
    }

    /// Superblock index of occurrence `k * SELECT_SAMPLE_RATE + 1` for each k.
    fn sample_superblocks(&self, count: usize, bit: bool) -> Vec<u32> {
        let mut samples = Vec::with_capacity(count.div_ceil(SELECT_SAMPLE_RATE));
        let mut next = 1usize;
        for s in 0..self.superblocks() {
            let after = self.rank_before_superblock(s + 1, bit);
            while next <= count && next <= after {
                samples.push(s as u32);
                next += SELECT_SAMPLE_RATE;
            }
        }
        samples
    }

    #[inline]
    fn superblocks(&self) -> usize {
        self.counters.len() - 1
    }

    #[inline]
    fn rank_before_superblock(&self, s: usize, bit: bool) -> usize {
        let ones = self.counters[s][0] as usize;
        if bit {
            ones
        } else {
            s * SUPERBLOCK_BITS - ones
        }
    }

    #[inline]
    fn relative(&self, s: usize, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            ((self.counters[s][1] >> (REL_BITS * (k - 1))) & REL_MASK) as usize
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.counters.last().expect("sentinel counter")[0] as usize
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Ones in `[0, i)`, without bounds checking beyond debug assertions.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let w = i / WORD_BITS;
        let s = w / WORDS_PER_SUPERBLOCK;
        if s >= self.superblocks() {
            return self.count_ones();
        }
        let mut r = self.counters[s][0] as usize + self.relative(s, w % WORDS_PER_SUPERBLOCK);
        let off = i % WORD_BITS;
        if off != 0 {
            r += (self.words[w] & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Length of the run of ones starting at `i`.
    #[inline]
    pub(crate) fn ones_from(&self, i: usize) -> usize {
        let mut w = i / WORD_BITS;
        let off = i % WORD_BITS;
        let mut run = (!self.words.get(w).map_or(0, |&x| x) >> off).trailing_zeros() as usize;
        if run < WORD_BITS - off {
            return run.min(self.len - i);
        }
        run = WORD_BITS - off;
        loop {
            w += 1;
            let Some(&x) = self.words.get(w) else {
                return run.min(self.len - i);
            };
            let t = (!x).trailing_zeros() as usize;
            run += t;
            if t < WORD_BITS {
                return run.min(self.len - i);
            }
        }
    }

    /// Position of the `j`-th (1-based) occurrence of `bit`. Caller guarantees the occurrence exists.
    pub fn select_unchecked(&self, j: usize, bit: bool) -> usize {
        let samples = if bit {
            &self.select1_samples
        } else {
            &self.select0_samples
        };
        let sample = (j - 1) / SELECT_SAMPLE_RATE;
        let mut lo = samples[sample] as usize;
        let mut hi = samples
            .get(sample + 1)
            .map_or(self.superblocks() - 1, |&s| s as usize);
        // last superblock in [lo, hi] whose prefix count is < j
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.rank_before_superblock(mid, bit) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let s = lo;
        let rem = j - self.rank_before_superblock(s, bit);
        let before = |k: usize| {
            let ones = self.relative(s, k);
            if bit {
                ones
            } else {
                k * WORD_BITS - ones
            }
        };
        // words of the superblock that end before the target occurrence
        let k = (1..WORDS_PER_SUPERBLOCK)
            .map(|k| usize::from(before(k) < rem))
            .sum::<usize>();
        let rem = rem - before(k);
        let w = s * WORDS_PER_SUPERBLOCK + k;
        let word = if bit { self.words[w] } else { !self.words[w] };
        w * WORD_BITS + select_in_word(word, (rem - 1) as u32) as usize
    }

    pub fn select1(&self, j: usize) -> Result<usize> {
        self.select(j, true)
    }

    pub fn select0(&self, j: usize) -> Result<usize> {
        self.select(j, false)
    }

    pub fn size_bits(&self) -> usize {
        // len field plus every stored array
        64 + 64 * self.words.len()
            + 128 * self.counters.len()
            + 32 * (self.select1_samples.len() + self.select0_samples.len())
    }
}

impl BitRankSelect for PlainBitvector {
    fn len(&self) -> usize {
        self.len
    }

    fn count_ones(&self) -> usize {
        PlainBitvector::count_ones(self)
    }

    fn get(&self, i: usize) -> Result<bool> {
        if i >= self.len {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.len,
            });
        }
        Ok(PlainBitvector::get(self, i))
    }

    fn rank(&self, i: usize, bit: bool) -> Result<usize> {
        check_index(i, self.len)?;
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    fn select(&self, j: usize, bit: bool) -> Result<usize> {
        let available = if bit {
            self.count_ones()
        } else {
            self.count_zeros()
        };
        if j == 0 || j > available {
            return Err(Error::NotFound {
                ordinal: j,
                what: format!("bit {}", u8::from(bit)),
                available,
            });
        }
        Ok(self.select_unchecked(j, bit))
    }

    fn size_bits(&self) -> usize {
        PlainBitvector::size_bits(self)
    }
}
