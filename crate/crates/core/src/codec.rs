//! Binary blobs for saving and loading sketches.
//!
//! Every blob starts with a 4-byte ASCII tag and a version byte, followed by
//! little-endian fields. See the README for the per-sketch layouts.

use crate::counters::{FmBitmap, HllSketch, MorrisCounter, MorrisPlus};
use crate::error::{Error, Result};
use crate::freq_sketches::{BloomFilter, CmSketch, CountSketch, StreamModel};
use crate::hashing::HashSeed;

pub const VERSION: u8 = 1;

pub trait Codec: Sized {
    const MAGIC: [u8; 4];
    fn encode_body(&self, out: &mut Vec<u8>);
    fn decode_body(r: &mut Reader<'_>) -> Result<Self>;

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Self::MAGIC.to_vec();
        out.push(VERSION);
        self.encode_body(&mut out);
        out
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { buf: bytes, pos: 0 };
        let magic = r.take(4)?;
        if magic != Self::MAGIC {
            return Err(Error::Codec(format!(
                "expected tag {:?}, found {:?}",
                String::from_utf8_lossy(&Self::MAGIC),
                String::from_utf8_lossy(magic)
            )));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::Codec(format!("unsupported version {version}")));
        }
        let v = Self::decode_body(&mut r)?;
        if r.pos != bytes.len() {
            return Err(Error::Codec(format!("{} trailing bytes", bytes.len() - r.pos)));
        }
        Ok(v)
    }
}

/// Peeks at the tag of a blob.
pub fn magic_of(bytes: &[u8]) -> Option<[u8; 4]> {
    bytes.get(..4).map(|m| [m[0], m[1], m[2], m[3]])
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| Error::Codec("blob truncated".into()))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Guards allocations against lengths the blob cannot hold.
    fn check_remaining(&self, count: usize, width: usize) -> Result<()> {
        match count.checked_mul(width) {
            Some(b) if b <= self.buf.len() - self.pos => Ok(()),
            _ => Err(Error::Codec("blob truncated".into())),
        }
    }
}

impl Codec for MorrisPlus {
    const MAGIC: [u8; 4] = *b"MRSP";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.extend((self.copies() as u32).to_le_bytes());
        for c in self.counters() {
            out.push(c.exponent() as u8);
        }
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let s = r.u32()? as usize;
        r.check_remaining(s, 1)?;
        let counters = (0..s)
            .map(|_| r.u8().map(|x| MorrisCounter::from_exponent(x as u32)))
            .collect::<Result<Vec<_>>>()?;
        MorrisPlus::from_counters(counters).map_err(|e| Error::Codec(e.to_string()))
    }
}

impl Codec for FmBitmap {
    const MAGIC: [u8; 4] = *b"FMBM";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.push(self.len_bits() as u8);
        out.extend(self.seed().0.to_le_bytes());
        out.extend(self.bitmap().to_le_bytes());
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let bits = r.u8()? as u32;
        let seed = HashSeed(r.u64()?);
        let bitmap = r.u64()?;
        FmBitmap::from_parts(bits, seed, bitmap).map_err(|e| Error::Codec(e.to_string()))
    }
}

impl Codec for HllSketch {
    const MAGIC: [u8; 4] = *b"HLLS";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.push(self.registers_len().trailing_zeros() as u8);
        out.extend(self.seed().0.to_le_bytes());
        out.extend_from_slice(self.registers());
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let b = r.u8()? as u32;
        if b > crate::counters::MAX_PRECISION {
            return Err(Error::Codec(format!("register precision {b} out of range")));
        }
        let seed = HashSeed(r.u64()?);
        let registers = r.take(1 << b)?.to_vec();
        HllSketch::from_parts(seed, registers).map_err(|e| Error::Codec(e.to_string()))
    }
}

impl Codec for BloomFilter {
    const MAGIC: [u8; 4] = *b"BLOM";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.extend(self.n_bits().to_le_bytes());
        out.extend((self.k() as u32).to_le_bytes());
        out.extend(self.seed().0.to_le_bytes());
        for w in self.words() {
            out.extend(w.to_le_bytes());
        }
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let n_bits = r.u64()?;
        let k = r.u32()? as usize;
        let seed = HashSeed(r.u64()?);
        let words = n_bits.div_ceil(64) as usize;
        r.check_remaining(words, 8)?;
        let words = (0..words).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        BloomFilter::from_parts(n_bits, k, seed, words).map_err(|e| Error::Codec(e.to_string()))
    }
}

fn read_counters(r: &mut Reader<'_>, width: usize, depth: usize) -> Result<Vec<i64>> {
    let cells = width
        .checked_mul(depth)
        .ok_or_else(|| Error::Codec("dimensions overflow".into()))?;
    r.check_remaining(cells, 8)?;
    (0..cells).map(|_| r.i64()).collect()
}

impl Codec for CmSketch {
    const MAGIC: [u8; 4] = *b"CMSK";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.extend((self.width() as u32).to_le_bytes());
        out.extend((self.depth() as u32).to_le_bytes());
        out.push(match self.model() {
            StreamModel::CashRegister => 0,
            StreamModel::Turnstile => 1,
        });
        out.extend(self.seed().0.to_le_bytes());
        for c in self.counters() {
            out.extend(c.to_le_bytes());
        }
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let width = r.u32()? as usize;
        let depth = r.u32()? as usize;
        let model = match r.u8()? {
            0 => StreamModel::CashRegister,
            1 => StreamModel::Turnstile,
            x => return Err(Error::Codec(format!("unknown stream model {x}"))),
        };
        let seed = HashSeed(r.u64()?);
        let counts = read_counters(r, width, depth)?;
        CmSketch::from_parts(width, depth, model, seed, counts).map_err(|e| Error::Codec(e.to_string()))
    }
}

impl Codec for CountSketch {
    const MAGIC: [u8; 4] = *b"CSKT";

    fn encode_body(&self, out: &mut Vec<u8>) {
        out.extend((self.width() as u32).to_le_bytes());
        out.extend((self.depth() as u32).to_le_bytes());
        out.extend(self.seed().0.to_le_bytes());
        for c in self.counters() {
            out.extend(c.to_le_bytes());
        }
    }

    fn decode_body(r: &mut Reader<'_>) -> Result<Self> {
        let width = r.u32()? as usize;
        let depth = r.u32()? as usize;
        let seed = HashSeed(r.u64()?);
        let counts = read_counters(r, width, depth)?;
        CountSketch::from_parts(width, depth, seed, counts).map_err(|e| Error::Codec(e.to_string()))
    }
}
