use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense SimRank scores, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRankMatrix {
    pub n: usize,
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl SimRankMatrix {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.scores[a * self.n + b]
    }
}

/// SimRank iteration over in-neighbour sets:
/// `Sim(a, b) = (1 - c) / (|I(a)| |I(b)|) * sum Sim(x, y)` over
/// `x in I(a), y in I(b)`, with `Sim(a, a) = 1` and zero when either side
/// has no in-neighbours.
#[derive(Debug, Clone)]
pub struct SimRank {
    c: f64,
    inn: Vec<Vec<usize>>,
    scores: Vec<f64>,
    iterations: usize,
}

impl SimRank {
    pub fn new(g: &Graph, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidArgument(format!("decay must lie in (0, 1), got {c}")));
        }
        let n = g.n();
        let mut inn = vec![Vec::new(); n];
        for (u, row) in g.weighted_out().into_iter().enumerate() {
            for (v, _) in row {
                inn[v].push(u);
            }
        }
        let mut scores = vec![0.0; n * n];
        (0..n).for_each(|i| scores[i * n + i] = 1.0);
        Ok(SimRank {
            c,
            inn,
            scores,
            iterations: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.inn.len()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    /// One iteration; returns the largest entry change.
    pub fn step(&mut self) -> f64 {
        let n = self.n();
        let mut next = vec![0.0; n * n];
        for a in 0..n {
            next[a * n + a] = 1.0;
            for b in a + 1..n {
                let (ia, ib) = (&self.inn[a], &self.inn[b]);
                if ia.is_empty() || ib.is_empty() {
                    continue;
                }
                let sum: f64 = ia
                    .iter()
                    .map(|&x| ib.iter().map(|&y| self.scores[x * n + y]).sum::<f64>())
                    .sum();
                let s = (1.0 - self.c) * sum / (ia.len() * ib.len()) as f64;
                next[a * n + b] = s;
                next[b * n + a] = s;
            }
        }
        let change = next
            .iter()
            .zip(&self.scores)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        self.scores = next;
        self.iterations += 1;
        change
    }

    pub fn into_matrix(self, converged: bool) -> SimRankMatrix {
        SimRankMatrix {
            n: self.inn.len(),
            scores: self.scores,
            iterations: self.iterations,
            converged,
        }
    }
}

/// Iterates from the identity until the largest change is at most `tol` or
/// `k_max` iterations have run.
pub fn simrank(g: &Graph, c: f64, k_max: usize, tol: f64) -> Result<SimRankMatrix> {
    let mut s = SimRank::new(g, c)?;
    for _ in 0..k_max {
        if s.step() <= tol {
            return Ok(s.into_matrix(true));
        }
    }
    Ok(s.into_matrix(false))
}
