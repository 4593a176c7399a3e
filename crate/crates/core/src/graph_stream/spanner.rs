use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Greedy streaming spanner: an offered edge is kept iff the current
/// spanner distance between its endpoints exceeds `alpha`.
#[derive(Debug, Clone)]
pub struct Spanner {
    alpha: f64,
    depth: usize,
    adj: Vec<Vec<usize>>,
    kept: Vec<(usize, usize)>,
}

impl Spanner {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("stretch must be >= 1, got {alpha}")));
        }
        Ok(Spanner {
            alpha,
            depth: alpha.floor() as usize,
            adj: vec![Vec::new(); n],
            kept: Vec::new(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kept(&self) -> &[(usize, usize)] {
        &self.kept
    }

    /// Whether `v` is within `floor(alpha)` hops of `u` in the spanner.
    fn within_stretch(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let mut dist = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([u]);
        dist[u] = 0;
        while let Some(x) = queue.pop_front() {
            if dist[x] == self.depth {
                continue;
            }
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    if y == v {
                        return true;
                    }
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    pub fn offer(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::Validation(format!("edge ({u}, {v}) out of range for n={n}")));
        }
        if self.within_stretch(u, v) {
            return Ok(false);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.kept.push((u, v));
        Ok(true)
    }

    pub fn into_graph(self) -> Graph {
        let n = self.adj.len();
        Graph::from_edges(n, false, self.kept).expect("kept edges are in range")
    }
}

/// Runs the edges of `g` through a [`Spanner`] in stored order.
pub fn spanner(g: &Graph, alpha: f64) -> Result<Graph> {
    let mut s = Spanner::new(g.n(), alpha)?;
    for e in g.edges() {
        s.offer(e.u, e.v)?;
    }
    Ok(s.into_graph())
}
