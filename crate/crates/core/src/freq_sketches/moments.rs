use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::median_f64;
use crate::error::{Error, Result};
use crate::hashing::HashSeed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Reservoir {
    item: u64,
    tail: u64,
}

/// One-pass `F_k` estimator.
///
/// Each of the `s1 * s2` reservoirs samples a uniform stream position and
/// counts the occurrences `r` of that position's item from there on. A copy
/// yields `X = m (r^k - (r-1)^k)`; the estimate is the median over `s2`
/// groups of the mean over `s1` copies.
#[derive(Debug, Clone)]
pub struct FkEstimator {
    k: u32,
    s1: usize,
    s2: usize,
    len: u64,
    reservoirs: Vec<Reservoir>,
    rng: ChaCha8Rng,
}

impl FkEstimator {
    pub fn new(k: u32, s1: usize, s2: usize, seed: HashSeed) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "k must be at least 1; distinct counts are served by the counters module".into(),
            ));
        }
        if s1 == 0 || s2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "copy counts must be positive, got s1={s1}, s2={s2}"
            )));
        }
        Ok(FkEstimator {
            k,
            s1,
            s2,
            len: 0,
            reservoirs: vec![Reservoir { item: 0, tail: 0 }; s1 * s2],
            rng: seed.rng(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn stream_len(&self) -> u64 {
        self.len
    }

    pub fn process(&mut self, item: u64) {
        self.len += 1;
        let t = self.len;
        for res in &mut self.reservoirs {
            if self.rng.random_range(0..t) == 0 {
                *res = Reservoir { item, tail: 1 };
            } else if res.item == item {
                res.tail += 1;
            }
        }
    }

    /// `(item, r)` held by every reservoir, group by group.
    pub fn samples(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.reservoirs.iter().map(|r| (r.item, r.tail))
    }

    /// Per-copy values `X`.
    pub fn sample_values(&self) -> Vec<f64> {
        let m = self.len as f64;
        let k = self.k as i32;
        self.reservoirs
            .iter()
            .map(|r| {
                let r = r.tail as f64;
                m * (r.powi(k) - (r - 1.0).powi(k))
            })
            .collect()
    }

    pub fn estimate(&self) -> f64 {
        if self.len == 0 {
            return 0.0;
        }
        let xs = self.sample_values();
        let mut means: Vec<f64> = xs
            .chunks(self.s1)
            .map(|g| g.iter().sum::<f64>() / self.s1 as f64)
            .collect();
        debug_assert_eq!(means.len(), self.s2);
        median_f64(&mut means)
    }
}

impl Extend<u64> for FkEstimator {
    fn extend<I: IntoIterator<Item = u64>>(&mut self, iter: I) {
        for item in iter {
            self.process(item);
        }
    }
}
