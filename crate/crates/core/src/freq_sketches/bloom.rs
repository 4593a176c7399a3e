use crate::error::{Error, Result};
use crate::hashing::{CongruentialHash, HashSeed, KeyHash};

/// Bit-array membership filter with `k` independent congruential hashes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomFilter {
    n_bits: u64,
    words: Vec<u64>,
    hashes: Vec<CongruentialHash>,
    seed: HashSeed,
}

impl BloomFilter {
    pub fn new(n_bits: u64, k: usize, seed: HashSeed) -> Result<Self> {
        if n_bits == 0 || k == 0 {
            return Err(Error::InvalidArgument(format!(
                "bloom filter needs n_bits >= 1 and k >= 1, got n_bits={n_bits}, k={k}"
            )));
        }
        let hashes = (0..k as u64)
            .map(|j| CongruentialHash::new(seed.derive(j), n_bits))
            .collect::<Result<Vec<_>>>()?;
        Ok(BloomFilter {
            n_bits,
            words: vec![0; n_bits.div_ceil(64) as usize],
            hashes,
            seed,
        })
    }

    /// `k = round((n_bits / expected_items) ln 2)`, at least 1.
    pub fn with_expected_items(n_bits: u64, expected_items: u64, seed: HashSeed) -> Result<Self> {
        Self::new(n_bits, Self::optimal_k(n_bits, expected_items)?, seed)
    }

    pub fn optimal_k(n_bits: u64, expected_items: u64) -> Result<usize> {
        if expected_items == 0 {
            return Err(Error::InvalidArgument("expected item count must be positive".into()));
        }
        let k = (n_bits as f64 / expected_items as f64 * std::f64::consts::LN_2).round();
        Ok((k as usize).max(1))
    }

    /// Predicted false-positive rate `(1 - e^{-k n / m})^k`.
    pub fn predicted_fp_rate(n_bits: u64, k: usize, inserted: u64) -> f64 {
        let k = k as f64;
        (1.0 - (-k * inserted as f64 / n_bits as f64).exp()).powf(k)
    }

    pub(crate) fn from_parts(n_bits: u64, k: usize, seed: HashSeed, words: Vec<u64>) -> Result<Self> {
        let mut b = Self::new(n_bits, k, seed)?;
        if words.len() != b.words.len() {
            return Err(Error::Codec("bitmap word count does not match n_bits".into()));
        }
        b.words = words;
        Ok(b)
    }

    pub fn n_bits(&self) -> u64 {
        self.n_bits
    }

    pub fn k(&self) -> usize {
        self.hashes.len()
    }

    pub fn seed(&self) -> HashSeed {
        self.seed
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, item: u64) {
        for h in &self.hashes {
            let pos = h.eval(item);
            self.words[(pos / 64) as usize] |= 1 << (pos % 64);
        }
    }

    /// `false` is exact; `true` may be a false positive.
    pub fn contains(&self, item: u64) -> bool {
        self.hashes.iter().all(|h| {
            let pos = h.eval(item);
            self.words[(pos / 64) as usize] >> (pos % 64) & 1 == 1
        })
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Bitwise union of two filters built with the same shape and seed.
    pub fn merge(&mut self, other: &BloomFilter) -> Result<()> {
        if self.n_bits != other.n_bits || self.k() != other.k() || self.seed != other.seed {
            return Err(Error::MergeIncompatible("bloom filters differ in shape or seed".into()));
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        Ok(())
    }
}
