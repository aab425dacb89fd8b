//! Word-level helpers shared by the bitvector types.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask with the low `bits` bits set; `bits` may be 64.
#[inline]
pub(crate) fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Position of the `k`-th (0-based) set bit of `word`. Caller guarantees `k < word.count_ones()`.
#[inline]
pub(crate) fn select_in_word(word: u64, k: u32) -> u32 {
    debug_assert!(k < word.count_ones());
    const ONES_STEP_8: u64 = 0x0101_0101_0101_0101;
    const MSBS_STEP_8: u64 = 0x8080_8080_8080_8080;
    // per-byte popcounts, then inclusive prefix sums in every byte
    let mut s = word - ((word >> 1) & 0x5555_5555_5555_5555);
    s = (s & 0x3333_3333_3333_3333) + ((s >> 2) & 0x3333_3333_3333_3333);
    s = (s + (s >> 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    let sums = s.wrapping_mul(ONES_STEP_8);
    // bytes whose prefix sum is at most k precede the target byte
    let below = (((k as u64 * ONES_STEP_8) | MSBS_STEP_8) - sums) & MSBS_STEP_8;
    let place = below.count_ones() * 8;
    let before = ((sums << 8) >> place) as u32 & 0xff;
    let mut byte = (word >> place) & 0xff;
    for _ in 0..k - before {
        byte &= byte - 1;
    }
    place + byte.trailing_zeros()
}

/// Growable packed bit sequence used while building structures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(words_for(bits)),
            len: 0,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD_BITS] |= 1 << (self.len % WORD_BITS);
        }
        self.len += 1;
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit {i} out of bounds for length {}",
            self.len
        );
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn into_parts(self) -> (Vec<u64>, usize) {
        (self.words, self.len)
    }
}

impl FromIterator<bool> for BitBuf {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let iter = iter.into_iter();
        let mut buf = BitBuf::with_capacity(iter.size_hint().0);
        for b in iter {
            buf.push(b);
        }
        buf
    }
}

/// Fixed-width packed unsigned integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct PackedInts {
    width: u32,
    len: usize,
    words: Vec<u64>,
}

impl PackedInts {
    pub fn with_width(width: u32, capacity: usize) -> Self {
        assert!(width <= 64);
        Self {
            width,
            len: 0,
            words: Vec::with_capacity(words_for(capacity * width as usize)),
        }
    }

    pub fn from_parts(width: u32, len: usize, words: Vec<u64>) -> Option<Self> {
        if width > 64 || words.len() != words_for(len * width as usize) {
            return None;
        }
        Some(Self { width, len, words })
    }

    pub fn push(&mut self, value: u64) {
        debug_assert!(value & !low_mask(self.width) == 0);
        let w = self.width as usize;
        if w == 0 {
            self.len += 1;
            return;
        }
        let start = self.len * w;
        let end = start + w;
        while self.words.len() < words_for(end) {
            self.words.push(0);
        }
        let (wi, off) = (start / WORD_BITS, start % WORD_BITS);
        self.words[wi] |= value << off;
        if off + w > WORD_BITS {
            self.words[wi + 1] |= value >> (WORD_BITS - off);
        }
        self.len += 1;
    }

    #[inline]
    pub fn get(&self, k: usize) -> u64 {
        let w = self.width as usize;
        if w == 0 {
            return 0;
        }
        let start = k * w;
        let (wi, off) = (start / WORD_BITS, start % WORD_BITS);
        let mut v = self.words[wi] >> off;
        if off + w > WORD_BITS {
            v |= self.words[wi + 1] << (WORD_BITS - off);
        }
        v & low_mask(self.width)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn size_bits(&self) -> usize {
        self.words.len() * WORD_BITS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn select_in_word_matches_scan() {
        let words = [1u64, u64::MAX, 0x8000_0000_0000_0000, 0xdead_beef_1234_5678];
        for &w in &words {
            let ones: Vec<u32> = (0..64).filter(|&p| (w >> p) & 1 == 1).collect();
            for (k, &p) in ones.iter().enumerate() {
                assert_eq!(select_in_word(w, k as u32), p);
            }
        }
    }

    #[test]
    fn select_in_word_on_scattered_words() {
        let mut w = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..2000 {
            w ^= w << 13;
            w ^= w >> 7;
            w ^= w << 17;
            let sparse = w & (w >> 3) & (w >> 5);
            for word in [w, sparse, !sparse] {
                let ones = (0..64).filter(|&p| (word >> p) & 1 == 1);
                for (k, p) in ones.enumerate() {
                    assert_eq!(select_in_word(word, k as u32), p, "{word:#x} {k}");
                }
            }
        }
    }

    #[test]
    fn packed_ints_cross_word_boundaries() {
        for width in [0u32, 1, 3, 7, 13, 31, 63, 64] {
            let mut p = PackedInts::with_width(width, 100);
            let vals: Vec<u64> = (0..100u64)
                .map(|i| i.wrapping_mul(0x9e37_79b9_7f4a_7c15) & low_mask(width))
                .collect();
            for &v in &vals {
                p.push(v);
            }
            for (k, &v) in vals.iter().enumerate() {
                assert_eq!(p.get(k), v, "width {width} index {k}");
            }
        }
    }

    #[test]
    fn bitbuf_push_and_get() {
        let bits: Vec<bool> = (0..200).map(|i| i % 3 == 0).collect();
        let buf: BitBuf = bits.iter().copied().collect();
        assert_eq!(buf.len(), 200);
        for (i, &b) in bits.iter().enumerate() {
            assert_eq!(buf.get(i), b);
        }
    }
}
