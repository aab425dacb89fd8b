//! Binary container for built structures.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "DGRS" | version u8 | structure tag u8 | base tag u8 | block param u8 | sigma u64
//! then per component: sub-tag u8 | payload length u64 | payload
//! ```
//!
//! Components in order: reduction I and II store `S`, `R`; reduction III
//! stores `E`, `S`, `R`; DSD stores `E`, `B` (base string) and `sigma`
//! overflow vectors `O`. Bit sequences are stored as 64-bit words and the
//! rank/select support is rebuilt on load.

use crate::bitvector::bits::PackedInts;
use crate::bitvector::{PlainBitvector, SparseBitvector};
use crate::dsd::DsdStructure;
use crate::error::{Error, Result};
use crate::index::{StructureKind, SubsetIndex, SubsetRankSelect};
use crate::reductions::{ReductionI, ReductionII, ReductionIII};
use crate::strrank::{Base, BitPlaneRank, StringIndex, SymbolRankSelect, WaveletTree};

pub const MAGIC: &[u8; 4] = b"DGRS";
pub const VERSION: u8 = 1;

const TAG_S: u8 = b'S';
const TAG_R: u8 = b'R';
const TAG_E: u8 = b'E';
const TAG_BASE: u8 = b'B';
const TAG_OVERFLOW: u8 = b'O';

const STRING_WAVELET: u8 = 0;
const STRING_BITPLANE: u8 = 1;

fn structure_tag(kind: StructureKind) -> u8 {
    match kind {
        StructureKind::ReductionI => 1,
        StructureKind::ReductionII => 2,
        StructureKind::ReductionIII => 3,
        StructureKind::Dsd => 4,
    }
}

fn kind_from_tag(tag: u8) -> Result<StructureKind> {
    StructureKind::ALL
        .into_iter()
        .find(|&k| structure_tag(k) == tag)
        .ok_or_else(|| Error::Container(format!("unknown structure tag {tag}")))
}

/// True if `bytes` starts with the container magic.
pub fn is_container(bytes: &[u8]) -> bool {
    bytes.starts_with(MAGIC)
}

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn words(&mut self, words: &[u64]) {
        for &w in words {
            self.u64(w);
        }
    }

    fn component(&mut self, tag: u8, payload: Writer) {
        self.u8(tag);
        self.u64(payload.buf.len() as u64);
        self.buf.extend_from_slice(&payload.buf);
    }
}

fn plain_payload(w: &mut Writer, bv: &PlainBitvector) {
    w.u64(bv.len() as u64);
    w.words(bv.words());
}

fn sparse_payload(w: &mut Writer, sv: &SparseBitvector) {
    w.u64(sv.len() as u64);
    w.u64(sv.low().len() as u64);
    w.u64(u64::from(sv.low().width()));
    w.u64(sv.low().words().len() as u64);
    w.words(sv.low().words());
    plain_payload(w, sv.high());
}

fn string_payload(w: &mut Writer, s: &StringIndex) {
    match s {
        StringIndex::Wavelet(wt) => {
            w.u8(STRING_WAVELET);
            w.u64(wt.sigma() as u64);
            w.u64(wt.len() as u64);
            w.u64(wt.levels().len() as u64);
            for level in wt.levels() {
                plain_payload(w, level);
            }
        }
        StringIndex::BitPlane(bp) => {
            w.u8(STRING_BITPLANE);
            w.u64(bp.block_param() as u64);
            w.u64(bp.len() as u64);
            w.words(bp.low_plane());
            w.words(bp.high_plane());
        }
    }
}

fn with<F: FnOnce(&mut Writer)>(f: F) -> Writer {
    let mut w = Writer::default();
    f(&mut w);
    w
}

fn write_reduction_i(w: &mut Writer, r: &ReductionI) {
    w.component(TAG_S, with(|p| string_payload(p, r.string_index())));
    w.component(TAG_R, with(|p| plain_payload(p, r.indicator())));
}

/// Serializes a structure.
pub fn encode(index: &SubsetIndex) -> Vec<u8> {
    let mut w = Writer::default();
    w.buf.extend_from_slice(MAGIC);
    w.u8(VERSION);
    w.u8(structure_tag(index.kind()));
    match index.base() {
        Base::Wavelet => {
            w.u8(STRING_WAVELET);
            w.u8(0);
        }
        Base::BitPlane(i) => {
            w.u8(STRING_BITPLANE);
            w.u8(i as u8);
        }
    }
    w.u64(index.sigma() as u64);
    match index {
        SubsetIndex::ReductionI(r) => write_reduction_i(&mut w, r),
        SubsetIndex::ReductionII(r) => write_reduction_i(&mut w, r.inner()),
        SubsetIndex::ReductionIII(r) => {
            w.component(TAG_E, with(|p| sparse_payload(p, r.empty_set_vector())));
            write_reduction_i(&mut w, r.inner());
        }
        SubsetIndex::Dsd(d) => {
            w.component(TAG_E, with(|p| sparse_payload(p, d.empty_set_vector())));
            w.component(TAG_BASE, with(|p| string_payload(p, d.base())));
            for o in d.overflow() {
                w.component(TAG_OVERFLOW, with(|p| sparse_payload(p, o)));
            }
        }
    }
    w.buf
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.remaining() {
            return Err(Error::Container(format!(
                "truncated: need {n} bytes at offset {}, have {}",
                self.pos,
                self.remaining()
            )));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<u64> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes(b.try_into().expect("8 bytes")))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Container("value exceeds usize".into()))
    }

    fn words(&mut self, count: usize) -> Result<Vec<u64>> {
        if count > self.remaining() / 8 {
            return Err(Error::Container(format!(
                "truncated: {count} words expected"
            )));
        }
        (0..count).map(|_| self.u64()).collect()
    }

    fn component(&mut self, tag: u8) -> Result<Reader<'a>> {
        let found = self.u8()?;
        if found != tag {
            return Err(Error::Container(format!(
                "expected component {:?}, found {:?}",
                tag as char, found as char
            )));
        }
        let len = self.usize()?;
        Ok(Reader::new(self.take(len)?))
    }

    fn finish(&self, what: &str) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Container(format!(
                "{} trailing bytes after {what}",
                self.remaining()
            )));
        }
        Ok(())
    }
}

fn read_plain(r: &mut Reader) -> Result<PlainBitvector> {
    let len = r.usize()?;
    let words = r.words(len.div_ceil(64))?;
    Ok(PlainBitvector::from_words(words, len))
}

fn read_sparse(r: &mut Reader) -> Result<SparseBitvector> {
    let len = r.usize()?;
    let count = r.usize()?;
    let width = r.u64()?;
    let nlow = r.usize()?;
    let low_words = r.words(nlow)?;
    let width = u32::try_from(width).map_err(|_| Error::Container("bad low width".into()))?;
    let low = PackedInts::from_parts(width, count, low_words)
        .ok_or_else(|| Error::Container("sparse low part shape mismatch".into()))?;
    let high = read_plain(r)?;
    SparseBitvector::from_parts(len, low, high)
}

fn read_string(r: &mut Reader) -> Result<StringIndex> {
    match r.u8()? {
        STRING_WAVELET => {
            let sigma = r.usize()?;
            let len = r.usize()?;
            let depth = r.usize()?;
            if depth > 64 {
                return Err(Error::Container(format!("{depth} wavelet levels")));
            }
            let levels = (0..depth)
                .map(|_| read_plain(r))
                .collect::<Result<Vec<_>>>()?;
            Ok(StringIndex::Wavelet(WaveletTree::from_levels(
                sigma, len, levels,
            )?))
        }
        STRING_BITPLANE => {
            let block_param = r.usize()?;
            let len = r.usize()?;
            let words = len.div_ceil(64);
            let low = r.words(words)?;
            let high = r.words(words)?;
            Ok(StringIndex::BitPlane(BitPlaneRank::from_planes(
                len,
                block_param,
                low,
                high,
            )?))
        }
        t => Err(Error::Container(format!("unknown string tag {t}"))),
    }
}

fn read_component<T>(
    r: &mut Reader,
    tag: u8,
    f: impl FnOnce(&mut Reader) -> Result<T>,
) -> Result<T> {
    let mut sub = r.component(tag)?;
    let v = f(&mut sub)?;
    sub.finish(&format!("component {:?}", tag as char))?;
    Ok(v)
}

fn read_reduction_i(r: &mut Reader, sigma: usize) -> Result<ReductionI> {
    let s = read_component(r, TAG_S, read_string)?;
    let bits = read_component(r, TAG_R, read_plain)?;
    ReductionI::from_parts(sigma, s, bits)
}

/// Deserializes a structure written by [`encode`].
pub fn decode(bytes: &[u8]) -> Result<SubsetIndex> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::Container("bad magic".into()));
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(Error::Container(format!("unsupported version {version}")));
    }
    let kind = kind_from_tag(r.u8()?)?;
    let base_tag = r.u8()?;
    let block_param = r.u8()?;
    let declared_base = match base_tag {
        STRING_WAVELET => Base::Wavelet,
        STRING_BITPLANE => Base::BitPlane(block_param as usize),
        t => return Err(Error::Container(format!("unknown base tag {t}"))),
    };
    let sigma = r.usize()?;
    let index = match kind {
        StructureKind::ReductionI => SubsetIndex::ReductionI(read_reduction_i(&mut r, sigma)?),
        StructureKind::ReductionII => SubsetIndex::ReductionII(ReductionII::from_inner(
            sigma,
            read_reduction_i(&mut r, sigma + 1)?,
        )?),
        StructureKind::ReductionIII => {
            let e = read_component(&mut r, TAG_E, read_sparse)?;
            SubsetIndex::ReductionIII(ReductionIII::from_parts(
                e,
                read_reduction_i(&mut r, sigma)?,
            )?)
        }
        StructureKind::Dsd => {
            let e = read_component(&mut r, TAG_E, read_sparse)?;
            let base = read_component(&mut r, TAG_BASE, read_string)?;
            let overflow = (0..sigma)
                .map(|_| read_component(&mut r, TAG_OVERFLOW, read_sparse))
                .collect::<Result<Vec<_>>>()?;
            SubsetIndex::Dsd(DsdStructure::from_parts(e, base, overflow)?)
        }
    };
    r.finish("last component")?;
    if index.base() != declared_base {
        return Err(Error::Container(
            "base tag disagrees with stored string".into(),
        ));
    }
    Ok(index)
}
