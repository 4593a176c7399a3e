use rand::Rng;

use crate::error::{Error, Result};

/// Approximate event counter holding only the exponent `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MorrisCounter {
    x: u32,
}

impl MorrisCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_exponent(x: u32) -> Self {
        MorrisCounter { x }
    }

    pub fn exponent(&self) -> u32 {
        self.x
    }

    /// Bumps `x` with probability `2^-x`.
    pub fn increment<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let hit = match self.x {
            0 => true,
            // The top `x` bits of a uniform word are all zero with
            // probability exactly 2^-x.
            x if x < 64 => rng.random::<u64>() >> (64 - x) == 0,
            x => rng.random_bool(0.5f64.powi(x as i32)),
        };
        if hit {
            self.x += 1;
        }
    }

    /// `2^x - 1`.
    pub fn estimate(&self) -> f64 {
        (self.x as f64).exp2() - 1.0
    }
}

/// Mean of `s` independent Morris counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorrisPlus {
    counters: Vec<MorrisCounter>,
}

impl MorrisPlus {
    pub fn new(copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidArgument("Morris+ needs at least one copy".into()));
        }
        Ok(MorrisPlus {
            counters: vec![MorrisCounter::new(); copies],
        })
    }

    /// Sized from a target relative error: `s = ceil(3 / (2 eps^2))`.
    pub fn with_epsilon(epsilon: f64) -> Result<Self> {
        Self::new(Self::copies_for(epsilon)?)
    }

    pub fn copies_for(epsilon: f64) -> Result<usize> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok((3.0 / (2.0 * epsilon * epsilon)).ceil() as usize)
    }

    pub fn from_counters(counters: Vec<MorrisCounter>) -> Result<Self> {
        if counters.is_empty() {
            return Err(Error::InvalidArgument("Morris+ needs at least one copy".into()));
        }
        Ok(MorrisPlus { counters })
    }

    pub fn copies(&self) -> usize {
        self.counters.len()
    }

    pub fn counters(&self) -> &[MorrisCounter] {
        &self.counters
    }

    pub fn increment<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for c in &mut self.counters {
            c.increment(rng);
        }
    }

    pub fn estimate(&self) -> f64 {
        self.counters.iter().map(MorrisCounter::estimate).sum::<f64>() / self.counters.len() as f64
    }

    /// Adds the copies of another instance that observed the same events.
    pub fn absorb_copies(&mut self, other: &MorrisPlus) {
        self.counters.extend_from_slice(&other.counters);
    }
}
