use super::{median_i64, StreamModel};
use crate::error::{Error, Result};
use crate::hashing::{CongruentialHash, HashSeed, KeyHash};

/// Count-Min sketch: a `d x w` counter matrix with one pairwise-independent
/// hash per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmSketch {
    width: usize,
    depth: usize,
    counts: Vec<i64>,
    hashes: Vec<CongruentialHash>,
    model: StreamModel,
    seed: HashSeed,
}

impl CmSketch {
    pub fn new(width: usize, depth: usize, model: StreamModel, seed: HashSeed) -> Result<Self> {
        if width == 0 || depth == 0 {
            return Err(Error::InvalidArgument(format!(
                "count-min needs width and depth >= 1, got {width}x{depth}"
            )));
        }
        let hashes = (0..depth as u64)
            .map(|j| CongruentialHash::new(seed.derive(j), width as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(CmSketch {
            width,
            depth,
            counts: vec![0; width * depth],
            hashes,
            model,
            seed,
        })
    }

    /// `w = ceil(2/eps)`, `d = ceil(log2(1/delta))`.
    pub fn with_error(epsilon: f64, delta: f64, model: StreamModel, seed: HashSeed) -> Result<Self> {
        let (w, d) = Self::dimensions(epsilon, delta)?;
        Self::new(w, d, model, seed)
    }

    pub fn dimensions(epsilon: f64, delta: f64) -> Result<(usize, usize)> {
        check_unit("epsilon", epsilon)?;
        check_unit("delta", delta)?;
        let w = (2.0 / epsilon).ceil() as usize;
        let d = ((1.0 / delta).log2().ceil() as usize).max(1);
        Ok((w, d))
    }

    pub(crate) fn from_parts(
        width: usize,
        depth: usize,
        model: StreamModel,
        seed: HashSeed,
        counts: Vec<i64>,
    ) -> Result<Self> {
        let mut s = Self::new(width, depth, model, seed)?;
        if counts.len() != width * depth {
            return Err(Error::Codec("counter count does not match dimensions".into()));
        }
        if model == StreamModel::CashRegister && counts.iter().any(|&c| c < 0) {
            return Err(Error::Codec("negative counter in cash-register sketch".into()));
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

    pub fn model(&self) -> StreamModel {
        self.model
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

    pub fn update(&mut self, item: u64, delta: i64) -> Result<()> {
        if delta < 0 && self.model == StreamModel::CashRegister {
            return Err(Error::ModelViolation(format!(
                "negative delta {delta} for item {item} in cash-register mode"
            )));
        }
        for (j, h) in self.hashes.iter().enumerate() {
            self.counts[j * self.width + h.eval(item) as usize] += delta;
        }
        Ok(())
    }

    fn cells(&self, item: u64) -> impl Iterator<Item = i64> + '_ {
        self.hashes
            .iter()
            .enumerate()
            .map(move |(j, h)| self.counts[j * self.width + h.eval(item) as usize])
    }

    /// Estimate appropriate to the sketch's model: row minimum for
    /// cash-register, row median for turnstile.
    pub fn query(&self, item: u64) -> i64 {
        match self.model {
            StreamModel::CashRegister => self.min_query(item),
            StreamModel::Turnstile => self.median_query(item),
        }
    }

    pub fn min_query(&self, item: u64) -> i64 {
        self.cells(item).min().unwrap_or(0)
    }

    pub fn median_query(&self, item: u64) -> i64 {
        let mut v: Vec<i64> = self.cells(item).collect();
        median_i64(&mut v)
    }

    /// Counter-wise sum with a sketch of identical shape, seed and model.
    pub fn merge(&mut self, other: &CmSketch) -> Result<()> {
        if self.width != other.width
            || self.depth != other.depth
            || self.seed != other.seed
            || self.model != other.model
        {
            return Err(Error::MergeIncompatible(
                "count-min sketches differ in shape, seed or model".into(),
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }
}

pub(crate) fn check_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {x}")))
    }
}
