//! L0 sampling over turnstile streams.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hashing::{
    add_mod_61, mul_mod_61, pow_mod_61, signed_to_field, HashSeed, KeyHash, TabulationHash,
    MERSENNE_61,
};

pub const DEFAULT_REPETITIONS: usize = 4;

/// One-sparse recovery cell: `(sum c, sum c*i, sum c*r^i mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Unit {
    count: i64,
    weighted: i128,
    fingerprint: u64,
}

/// A recovered item and its net count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOutcome {
    pub item: u64,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Stack {
    level_hash: TabulationHash,
    base: u64,
}

/// Uniform sampler over the support of a turnstile stream on `[0, n)`.
///
/// Item `i` belongs to level `j` when its level hash has at least `j`
/// trailing zeros, so level `j` sees a `2^-j` subsample and the levels nest.
/// The sampler keeps several independent level stacks and reports the first
/// stack that recovers an item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L0Sampler {
    domain: u64,
    levels: usize,
    seed: HashSeed,
    stacks: Arc<[Stack]>,
    units: Vec<Unit>,
}

impl L0Sampler {
    pub fn new(domain: u64, seed: HashSeed) -> Result<Self> {
        Self::with_repetitions(domain, DEFAULT_REPETITIONS, seed)
    }

    pub fn with_repetitions(domain: u64, repetitions: usize, seed: HashSeed) -> Result<Self> {
        if domain == 0 {
            return Err(Error::InvalidArgument("sampler domain must be non-empty".into()));
        }
        if repetitions == 0 {
            return Err(Error::InvalidArgument("sampler needs at least one level stack".into()));
        }
        let levels = Self::level_count(domain);
        let stacks = (0..repetitions as u64)
            .map(|r| {
                let s = seed.derive(r);
                let base = 2 + s.derive(0).0 % (MERSENNE_61 - 3);
                Ok(Stack {
                    level_hash: TabulationHash::new(s.derive(1), 64)?,
                    base,
                })
            })
            .collect::<Result<Arc<[_]>>>()?;
        Ok(L0Sampler {
            domain,
            levels,
            seed,
            stacks,
            units: vec![Unit::default(); repetitions * levels],
        })
    }

    /// `ceil(log2 n) + 1`.
    pub fn level_count(domain: u64) -> usize {
        (64 - (domain.max(1) - 1).leading_zeros()) as usize + 1
    }

    pub fn domain(&self) -> u64 {
        self.domain
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn repetitions(&self) -> usize {
        self.stacks.len()
    }

    pub fn seed(&self) -> HashSeed {
        self.seed
    }

    /// True when every cell is zero, which is the state of a sampler whose
    /// net stream is empty.
    pub fn is_zero(&self) -> bool {
        self.units.iter().all(|u| *u == Unit::default())
    }

    pub fn update(&mut self, item: u64, delta: i64) -> Result<()> {
        if item >= self.domain {
            return Err(Error::Domain {
                item,
                domain: self.domain,
            });
        }
        if delta == 0 {
            return Ok(());
        }
        let d = signed_to_field(delta);
        for (r, stack) in self.stacks.iter().enumerate() {
            let depth = (stack.level_hash.eval(item).trailing_zeros() as usize).min(self.levels - 1);
            let fp = mul_mod_61(d, pow_mod_61(stack.base, item));
            for unit in &mut self.units[r * self.levels..][..=depth] {
                unit.count += delta;
                unit.weighted += delta as i128 * item as i128;
                unit.fingerprint = add_mod_61(unit.fingerprint, fp);
            }
        }
        Ok(())
    }

    fn recover(&self, unit: &Unit, base: u64) -> Option<SampleOutcome> {
        if unit.count == 0 || unit.weighted % unit.count as i128 != 0 {
            return None;
        }
        let idx = unit.weighted / unit.count as i128;
        if idx < 0 || idx >= self.domain as i128 {
            return None;
        }
        let item = idx as u64;
        let expected = mul_mod_61(signed_to_field(unit.count), pow_mod_61(base, item));
        (expected == unit.fingerprint).then_some(SampleOutcome {
            item,
            value: unit.count,
        })
    }

    /// Scans each stack from its most subsampled level down and returns the
    /// first one-sparse cell; `None` when no cell qualifies.
    pub fn sample(&self) -> Option<SampleOutcome> {
        self.stacks.iter().enumerate().find_map(|(r, stack)| {
            self.units[r * self.levels..][..self.levels]
                .iter()
                .rev()
                .find_map(|u| self.recover(u, stack.base))
        })
    }

    /// Cell-wise sum with a sampler of the same domain, seed and stack count.
    pub fn merge(&mut self, other: &L0Sampler) -> Result<()> {
        if self.domain != other.domain || self.seed != other.seed || self.stacks.len() != other.stacks.len() {
            return Err(Error::MergeIncompatible(
                "L0 samplers differ in domain, seed or repetitions".into(),
            ));
        }
        for (a, b) in self.units.iter_mut().zip(&other.units) {
            a.count += b.count;
            a.weighted += b.weighted;
            a.fingerprint = add_mod_61(a.fingerprint, b.fingerprint);
        }
        Ok(())
    }
}
