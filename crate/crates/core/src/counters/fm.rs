use crate::error::{Error, Result};
use crate::hashing::{HashSeed, KeyHash, TabulationHash};

/// Index of the least-significant set bit of `y`, or `bits` when `y == 0`.
pub fn rho(y: u64, bits: u32) -> u32 {
    if y == 0 {
        bits
    } else {
        y.trailing_zeros()
    }
}

/// Single-bitmap Flajolet–Martin distinct counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmBitmap {
    bits: u32,
    bitmap: u64,
    seed: HashSeed,
    hash: TabulationHash,
}

impl FmBitmap {
    pub fn new(bits: u32, seed: HashSeed) -> Result<Self> {
        if bits == 0 || bits > 64 {
            return Err(Error::InvalidArgument(format!(
                "bitmap length must be in 1..=64, got {bits}"
            )));
        }
        Ok(FmBitmap {
            bits,
            bitmap: 0,
            seed,
            hash: TabulationHash::new(seed, bits)?,
        })
    }

    pub(crate) fn from_parts(bits: u32, seed: HashSeed, bitmap: u64) -> Result<Self> {
        let mut fm = Self::new(bits, seed)?;
        if bits < 64 && bitmap >> bits != 0 {
            return Err(Error::Codec("bitmap has bits beyond its length".into()));
        }
        fm.bitmap = bitmap;
        Ok(fm)
    }

    pub fn len_bits(&self) -> u32 {
        self.bits
    }

    pub fn seed(&self) -> HashSeed {
        self.seed
    }

    pub fn bitmap(&self) -> u64 {
        self.bitmap
    }

    pub fn update(&mut self, item: u64) {
        let r = rho(self.hash.eval(item), self.bits);
        if r < self.bits {
            self.bitmap |= 1 << r;
        }
    }

    /// Lowest unset position of the bitmap (`bits` when every bit is set).
    pub fn lowest_unset(&self) -> u32 {
        (!self.bitmap).trailing_zeros().min(self.bits)
    }

    /// `2^R` with `R` the lowest unset position.
    pub fn estimate(&self) -> f64 {
        (self.lowest_unset() as f64).exp2()
    }

    pub fn merge(&mut self, other: &FmBitmap) -> Result<()> {
        if self.bits != other.bits || self.seed != other.seed {
            return Err(Error::MergeIncompatible(
                "FM bitmaps differ in length or seed".into(),
            ));
        }
        self.bitmap |= other.bitmap;
        Ok(())
    }
}
