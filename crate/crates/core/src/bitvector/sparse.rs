use super::bits::{low_mask, PackedInts};
use super::{BitRankSelect, PlainBitvector};
use crate::error::{check_index, Error, Result};

/// Bitvector whose space depends on the number of set bits rather than its length.
///
/// The sorted positions of the ones are kept in a split encoding: the low
/// `low_width` bits of each position are bit-packed, the remaining high part
/// is written in unary into a [`PlainBitvector`] (one `1` per position,
/// one `0` per bucket boundary). Position `k` is recovered with one select.
///
/// `rank` and `select(_, false)` binary search over the positions; select of
/// zeros uses the identity that `ones[k] - k` zeros precede the `k`-th one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBitvector {
    len: usize,
    count: usize,
    low: PackedInts,
    high: PlainBitvector,
}

impl Default for SparseBitvector {
    fn default() -> Self {
        Self::empty(0)
    }
}

/// Estimated size overhead of the rank/select index on the high part.
const HIGH_OVERHEAD: f64 = 1.27;

fn choose_low_width(len: usize, count: usize) -> u32 {
    (0u32..64)
        .min_by(|&a, &b| {
            let cost =
                |w: u32| count as f64 * w as f64 + HIGH_OVERHEAD * (count + (len >> w) + 1) as f64;
            cost(a).total_cmp(&cost(b))
        })
        .unwrap_or(0)
}

impl SparseBitvector {
    /// An all-zero vector of the given length.
    pub fn empty(len: usize) -> Self {
        Self::from_sorted_unchecked(len, &[])
    }

    /// Builds from strictly increasing positions, each `< len`.
    pub fn from_positions(len: usize, positions: &[usize]) -> Result<Self> {
        for (k, &p) in positions.iter().enumerate() {
            if p >= len {
                return Err(Error::OutOfBounds { index: p, len });
            }
            if k > 0 && positions[k - 1] >= p {
                return Err(Error::InvalidArgument(format!(
                    "positions not strictly increasing at index {k}"
                )));
            }
        }
        Ok(Self::from_sorted_unchecked(len, positions))
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut len = 0;
        let mut ones = Vec::new();
        for b in bits {
            if b {
                ones.push(len);
            }
            len += 1;
        }
        Self::from_sorted_unchecked(len, &ones)
    }

    fn from_sorted_unchecked(len: usize, positions: &[usize]) -> Self {
        let count = positions.len();
        let width = choose_low_width(len, count);
        let mut low = PackedInts::with_width(width, count);
        let buckets = (len >> width) + 1;
        let mut high = vec![0u64; (count + buckets).div_ceil(64)];
        for (k, &p) in positions.iter().enumerate() {
            low.push(p as u64 & low_mask(width));
            let bit = (p >> width) + k;
            high[bit / 64] |= 1 << (bit % 64);
        }
        Self {
            len,
            count,
            low,
            high: PlainBitvector::from_words(high, count + buckets),
        }
    }

    /// Reassembles a vector from its stored parts, validating their shapes.
    pub(crate) fn from_parts(len: usize, low: PackedInts, high: PlainBitvector) -> Result<Self> {
        let count = low.len();
        let buckets = (len >> low.width()) + 1;
        if high.len() != count + buckets || high.count_ones() != count {
            return Err(Error::Container("sparse bitvector parts disagree".into()));
        }
        let sv = Self {
            len,
            count,
            low,
            high,
        };
        if count > 0 && sv.position(count - 1) >= len {
            return Err(Error::Container(
                "sparse bitvector position past end".into(),
            ));
        }
        Ok(sv)
    }

    pub(crate) fn low(&self) -> &PackedInts {
        &self.low
    }

    pub(crate) fn high(&self) -> &PlainBitvector {
        &self.high
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.count
    }

    /// Position of the `k`-th (0-based) set bit.
    #[inline]
    pub fn position(&self, k: usize) -> usize {
        let high = self.high.select_unchecked(k + 1, true) - k;
        (high << self.low.width()) | self.low.get(k) as usize
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.count).map(|k| self.position(k))
    }

    /// Ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        if i >= self.len {
            return self.count;
        }
        let width = self.low.width();
        let bucket = i >> width;
        // ones whose high part is below / at most `bucket`
        // ones with high part below `bucket`, then those equal to it up to the next zero
        let zero_pos = if bucket == 0 {
            None
        } else {
            Some(self.high.select_unchecked(bucket, false))
        };
        let start = zero_pos.map_or(0, |p| p + 1 - bucket);
        let end = start + self.high.ones_from(zero_pos.map_or(0, |p| p + 1));
        let target = i as u64 & low_mask(width);
        let (mut lo, mut hi) = (start, end);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.low.get(mid) < target {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn select1(&self, j: usize) -> Result<usize> {
        self.select(j, true)
    }

    pub fn select0(&self, j: usize) -> Result<usize> {
        self.select(j, false)
    }

    /// Position of the `j`-th zero; binary search for the number of ones before it.
    fn select0_unchecked(&self, j: usize) -> usize {
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.position(mid) - mid < j {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        j - 1 + lo
    }

    pub fn size_bits(&self) -> usize {
        // len, count and width fields
        3 * 64 + self.low.size_bits() + self.high.size_bits()
    }
}

impl BitRankSelect for SparseBitvector {
    fn len(&self) -> usize {
        self.len
    }

    fn count_ones(&self) -> usize {
        self.count
    }

    fn get(&self, i: usize) -> Result<bool> {
        if i >= self.len {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.len,
            });
        }
        Ok(self.rank1(i + 1) > self.rank1(i))
    }

    fn rank(&self, i: usize, bit: bool) -> Result<usize> {
        check_index(i, self.len)?;
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    fn select(&self, j: usize, bit: bool) -> Result<usize> {
        let available = if bit {
            self.count
        } else {
            self.len - self.count
        };
        if j == 0 || j > available {
            return Err(Error::NotFound {
                ordinal: j,
                what: format!("bit {}", u8::from(bit)),
                available,
            });
        }
        Ok(if bit {
            self.position(j - 1)
        } else {
            self.select0_unchecked(j)
        })
    }

    fn size_bits(&self) -> usize {
        SparseBitvector::size_bits(self)
    }
}
