use crate::error::{Error, Result};
use crate::hashing::{HashSeed, KeyHash, TabulationHash};

pub const MIN_PRECISION: u32 = 4;
pub const MAX_PRECISION: u32 = 18;

/// Bias constant `alpha_m`.
pub fn alpha(m: usize) -> f64 {
    match m {
        16 => 0.673,
        32 => 0.697,
        64 => 0.709,
        _ => 0.7213 / (1.0 + 1.079 / m as f64),
    }
}

/// HyperLogLog with `m = 2^b` registers over a 64-bit tabulation hash.
///
/// The first `b` hash bits pick the register; the register keeps the
/// maximum over its sub-stream of (leading zeros of the remaining bits) + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HllSketch {
    precision: u32,
    registers: Vec<u8>,
    seed: HashSeed,
    hash: TabulationHash,
}

impl HllSketch {
    /// `m` must be a power of two in `[16, 2^18]`.
    pub fn new(m: usize, seed: HashSeed) -> Result<Self> {
        if !m.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "register count must be a power of two, got {m}"
            )));
        }
        let precision = m.trailing_zeros();
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
            return Err(Error::InvalidArgument(format!(
                "register count must be between 2^{MIN_PRECISION} and 2^{MAX_PRECISION}, got {m}"
            )));
        }
        Ok(HllSketch {
            precision,
            registers: vec![0; m],
            seed,
            hash: TabulationHash::new(seed, 64)?,
        })
    }

    pub(crate) fn from_parts(seed: HashSeed, registers: Vec<u8>) -> Result<Self> {
        let mut h = Self::new(registers.len(), seed)?;
        let cap = (64 - h.precision + 1) as u8;
        if registers.iter().any(|&r| r > cap) {
            return Err(Error::Codec("register value exceeds hash width".into()));
        }
        h.registers = registers;
        Ok(h)
    }

    pub fn registers_len(&self) -> usize {
        self.registers.len()
    }

    pub fn registers(&self) -> &[u8] {
        &self.registers
    }

    pub fn seed(&self) -> HashSeed {
        self.seed
    }

    pub fn update(&mut self, item: u64) {
        let h = self.hash.eval(item);
        let idx = (h >> (64 - self.precision)) as usize;
        let rest = h << self.precision;
        let rank = if rest == 0 {
            64 - self.precision + 1
        } else {
            rest.leading_zeros() + 1
        };
        let slot = &mut self.registers[idx];
        if rank as u8 > *slot {
            *slot = rank as u8;
        }
    }

    /// Harmonic-mean estimate `alpha_m * m^2 / sum(2^-M[j])`.
    pub fn raw_estimate(&self) -> f64 {
        let m = self.registers.len() as f64;
        let harmonic: f64 = self
            .registers
            .iter()
            .map(|&r| (-(r as f64)).exp2())
            .sum();
        alpha(self.registers.len()) * m * m / harmonic
    }

    /// Raw estimate, switching to linear counting `m ln(m / V)` when the raw
    /// value is at most `5m/2` and `V > 0` registers are still zero.
    pub fn estimate(&self) -> f64 {
        let m = self.registers.len() as f64;
        let raw = self.raw_estimate();
        let zeros = self.registers.iter().filter(|&&r| r == 0).count();
        if raw <= 2.5 * m && zeros > 0 {
            m * (m / zeros as f64).ln()
        } else {
            raw
        }
    }

    /// Register-wise maximum.
    pub fn merge(&mut self, other: &HllSketch) -> Result<()> {
        if self.registers.len() != other.registers.len() || self.seed != other.seed {
            return Err(Error::MergeIncompatible(format!(
                "HLL sketches differ (m={} vs {}, seed={} vs {})",
                self.registers.len(),
                other.registers.len(),
                self.seed.0,
                other.seed.0
            )));
        }
        for (a, &b) in self.registers.iter_mut().zip(&other.registers) {
            *a = (*a).max(b);
        }
        Ok(())
    }
}
