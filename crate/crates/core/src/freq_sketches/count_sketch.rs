use super::count_min::check_unit;
use super::{median_f64, median_i64};
use crate::error::{Error, Result};
use crate::hashing::{CongruentialHash, HashSeed, KeyHash, SignHash};

/// Count Sketch in its reduced form: one bucket hash and one 4-wise
/// independent sign per row. Doubles as the AMS `F2` sketch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSketch {
    width: usize,
    depth: usize,
    counts: Vec<i64>,
    buckets: Vec<CongruentialHash>,
    signs: Vec<SignHash>,
    seed: HashSeed,
}

impl CountSketch {
    pub fn new(width: usize, depth: usize, seed: HashSeed) -> Result<Self> {
        if width == 0 || depth == 0 {
            return Err(Error::InvalidArgument(format!(
                "count sketch needs width and depth >= 1, got {width}x{depth}"
            )));
        }
        let buckets = (0..depth as u64)
            .map(|j| CongruentialHash::new(seed.derive(2 * j), width as u64))
            .collect::<Result<Vec<_>>>()?;
        let signs = (0..depth as u64)
            .map(|j| SignHash::new(seed.derive(2 * j + 1)))
            .collect();
        Ok(CountSketch {
            width,
            depth,
            counts: vec![0; width * depth],
            buckets,
            signs,
            seed,
        })
    }

    /// `w = ceil(3/eps^2)`, `d = ceil(2 ln(1/delta))`.
    pub fn with_error(epsilon: f64, delta: f64, seed: HashSeed) -> Result<Self> {
        let (w, d) = Self::dimensions(epsilon, delta)?;
        Self::new(w, d, seed)
    }

    pub fn dimensions(epsilon: f64, delta: f64) -> Result<(usize, usize)> {
        check_unit("epsilon", epsilon)?;
        check_unit("delta", delta)?;
        let w = (3.0 / (epsilon * epsilon)).ceil() as usize;
        let d = ((2.0 * (1.0 / delta).ln()).ceil() as usize).max(1);
        Ok((w, d))
    }

    pub(crate) fn from_parts(width: usize, depth: usize, seed: HashSeed, counts: Vec<i64>) -> Result<Self> {
        let mut s = Self::new(width, depth, seed)?;
        if counts.len() != width * depth {
            return Err(Error::Codec("counter count does not match dimensions".into()));
        }
        s.counts = counts;
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn seed(&self) -> HashSeed {
        self.seed
    }

    pub fn counters(&self) -> &[i64] {
        &self.counts
    }

    pub fn row(&self, j: usize) -> &[i64] {
        &self.counts[j * self.width..(j + 1) * self.width]
    }

    pub fn update(&mut self, item: u64, delta: i64) {
        for j in 0..self.depth {
            let col = self.buckets[j].eval(item) as usize;
            self.counts[j * self.width + col] += self.signs[j].sign(item) * delta;
        }
    }

    /// `g_j(i) * S[j, h_j(i)]` for every row.
    pub fn row_estimates(&self, item: u64) -> Vec<i64> {
        (0..self.depth)
            .map(|j| {
                let col = self.buckets[j].eval(item) as usize;
                self.signs[j].sign(item) * self.counts[j * self.width + col]
            })
            .collect()
    }

    pub fn point_query(&self, item: u64) -> i64 {
        median_i64(&mut self.row_estimates(item))
    }

    /// AMS estimate of `F2`: median over rows of the row's sum of squares.
    pub fn f2(&self) -> f64 {
        let mut sums: Vec<f64> = (0..self.depth)
            .map(|j| self.row(j).iter().map(|&c| (c as f64) * (c as f64)).sum())
            .collect();
        median_f64(&mut sums)
    }

    pub fn merge(&mut self, other: &CountSketch) -> Result<()> {
        if self.width != other.width || self.depth != other.depth || self.seed != other.seed {
            return Err(Error::MergeIncompatible(
                "count sketches differ in shape or seed".into(),
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }
}
