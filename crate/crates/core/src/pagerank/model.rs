use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BETA: f64 = 0.85;

/// The chain `P'`: from a vertex with out-edges, follow an out-edge
/// (probability proportional to weight) with probability `beta`, otherwise
/// jump according to `p`; from a dangling vertex, always jump by `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    beta: f64,
    p: Vec<f64>,
    out: Vec<Vec<(usize, f64)>>,
}

impl TransitionModel {
    /// `p = None` means uniform personalization.
    pub fn new(g: &Graph, beta: f64, p: Option<Vec<f64>>) -> Result<Self> {
        let n = g.n();
        if n == 0 {
            return Err(Error::InvalidArgument("PageRank needs at least one vertex".into()));
        }
        let p = p.unwrap_or_else(|| vec![1.0 / n as f64; n]);
        Self::validate(n, beta, &p)?;
        let out = g
            .weighted_out()
            .into_iter()
            .map(|row| {
                let d: f64 = row.iter().map(|&(_, w)| w).sum();
                row.into_iter().map(|(j, w)| (j, w / d)).collect()
            })
            .collect();
        Ok(TransitionModel { beta, p, out })
    }

    fn validate(n: usize, beta: f64, p: &[f64]) -> Result<()> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::Validation(format!("damping must lie in [0, 1], got {beta}")));
        }
        if p.len() != n {
            return Err(Error::Validation(format!(
                "personalization has length {}, graph has {n} vertices",
                p.len()
            )));
        }
        if p.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::Validation("personalization entries must be nonnegative".into()));
        }
        let s: f64 = p.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!("personalization must sum to 1, sums to {s}")));
        }
        Ok(())
    }

    /// Same graph and damping, different personalization.
    pub fn with_personalization(&self, p: Vec<f64>) -> Result<Self> {
        Self::validate(self.n(), self.beta, &p)?;
        Ok(TransitionModel {
            p,
            ..self.clone()
        })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn personalization(&self) -> &[f64] {
        &self.p
    }

    pub fn is_dangling(&self, i: usize) -> bool {
        self.out[i].is_empty()
    }

    /// `(j, A[i][j] / d(i))` for the out-edges of `i`.
    pub fn out_probabilities(&self, i: usize) -> &[(usize, f64)] {
        &self.out[i]
    }

    /// Row `i` of `P'`.
    pub fn transition_row(&self, i: usize) -> Vec<f64> {
        if self.is_dangling(i) {
            return self.p.clone();
        }
        let mut row: Vec<f64> = self.p.iter().map(|&x| (1.0 - self.beta) * x).collect();
        for &(j, q) in &self.out[i] {
            row[j] += self.beta * q;
        }
        row
    }

    /// `pi P'` without forming `P'`: the dangling mass and the teleport mass
    /// are pooled and spread by `p`.
    pub fn step(&self, pi: &[f64]) -> Vec<f64> {
        let mut next = vec![0.0; self.n()];
        let mut pooled = 0.0;
        for (i, &x) in pi.iter().enumerate() {
            if self.is_dangling(i) {
                pooled += x;
            } else {
                pooled += (1.0 - self.beta) * x;
                for &(j, q) in &self.out[i] {
                    next[j] += self.beta * q * x;
                }
            }
        }
        for (y, &pj) in next.iter_mut().zip(&self.p) {
            *y += pooled * pj;
        }
        next
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    LInf,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::L1 => diffs.sum(),
            Norm::LInf => diffs.fold(0.0, f64::max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCriterion {
    pub norm: Norm,
    pub tol: f64,
    pub max_iter: usize,
}

impl ConvergenceCriterion {
    pub fn new(norm: Norm, tol: f64, max_iter: usize) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        Ok(ConvergenceCriterion { norm, tol, max_iter })
    }
}

impl Default for ConvergenceCriterion {
    fn default() -> Self {
        ConvergenceCriterion {
            norm: Norm::L1,
            tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

/// L1-normalized scores plus solver bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}
