use std::collections::HashMap;

use crate::counters::HllSketch;
use crate::error::{Error, Result};
use crate::freq_sketches::CountSketch;
use crate::graph::Graph;
use crate::hashing::HashSeed;

const VERTEX_BITS: u32 = 21;

/// Packs the sorted triple `{a, b, c}` into one key, 21 bits per vertex.
pub fn triangle_token(a: usize, b: usize, c: usize) -> u64 {
    let mut t = [a as u64, b as u64, c as u64];
    t.sort_unstable();
    (t[0] << (2 * VERTEX_BITS)) | (t[1] << VERTEX_BITS) | t[2]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    Exact,
    /// HyperLogLog for `F0`, the stream length for `F1`, AMS for `F2`.
    Estimated { seed: HashSeed },
}

/// Moments of the token stream that emits `{u, v, w}` for every edge
/// `{u, v}` and every other vertex `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMoments {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
}

impl TriangleMoments {
    /// `F0 - 1.5 F1 + 0.5 F2`.
    pub fn triangles(&self) -> f64 {
        self.f0 - 1.5 * self.f1 + 0.5 * self.f2
    }
}

/// Distinct undirected edges without self-loops, each once as `(lo, hi)`,
/// in first-arrival order.
fn simple_edge_stream(g: &Graph) -> Vec<(usize, usize)> {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .iter()
        .filter(|e| e.u != e.v)
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .filter(|&p| seen.insert(p))
        .collect()
}

pub fn triangle_moments(g: &Graph, mode: MomentMode) -> Result<TriangleMoments> {
    let n = g.n();
    if n >= 1 << VERTEX_BITS {
        return Err(Error::InvalidArgument(format!(
            "triangle tokens support fewer than 2^{VERTEX_BITS} vertices, got {n}"
        )));
    }
    let edges = simple_edge_stream(g);
    let tokens = edges
        .iter()
        .flat_map(|&(u, v)| (0..n).filter(move |&w| w != u && w != v).map(move |w| triangle_token(u, v, w)));
    match mode {
        MomentMode::Exact => {
            let mut freq: HashMap<u64, u64> = HashMap::new();
            for t in tokens {
                *freq.entry(t).or_insert(0) += 1;
            }
            Ok(TriangleMoments {
                f0: freq.len() as f64,
                f1: freq.values().sum::<u64>() as f64,
                f2: freq.values().map(|&f| (f * f) as f64).sum(),
            })
        }
        MomentMode::Estimated { seed } => {
            let mut hll = HllSketch::new(1 << 12, seed.derive(0))?;
            let mut ams = CountSketch::new(1024, 7, seed.derive(1))?;
            let mut len = 0u64;
            for t in tokens {
                hll.update(t);
                ams.update(t, 1);
                len += 1;
            }
            Ok(TriangleMoments {
                f0: hll.estimate(),
                f1: len as f64,
                f2: ams.f2(),
            })
        }
    }
}

/// Triangle count of the simple undirected view of `g` from token-stream
/// moments. Exact mode is an identity; estimated mode carries no bound.
pub fn count_triangles_moments(g: &Graph, mode: MomentMode) -> Result<f64> {
    if g.n() < 3 {
        return Ok(0.0);
    }
    let t = triangle_moments(g, mode)?.triangles();
    Ok(match mode {
        MomentMode::Exact => t.round(),
        MomentMode::Estimated { .. } => t,
    })
}

fn per_vertex_triangles(adj: &[Vec<usize>]) -> Vec<u64> {
    let n = adj.len();
    let mut marks = vec![false; n];
    let mut per = vec![0u64; n];
    for u in 0..n {
        for &w in &adj[u] {
            marks[w] = true;
        }
        for &v in adj[u].iter().filter(|&&v| v > u) {
            for &w in adj[v].iter().filter(|&&w| w > v) {
                if marks[w] {
                    per[u] += 1;
                    per[v] += 1;
                    per[w] += 1;
                }
            }
        }
        for &w in &adj[u] {
            marks[w] = false;
        }
    }
    per
}

/// Exact count over the simple undirected view.
pub fn count_triangles_bruteforce(g: &Graph) -> u64 {
    per_vertex_triangles(&g.simple_neighbors()).iter().sum::<u64>() / 3
}

/// Mean over all vertices of `T(v) / C(deg v, 2)`, with vertices of degree
/// below two contributing zero.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let adj = g.simple_neighbors();
    let per = per_vertex_triangles(&adj);
    let total: f64 = adj
        .iter()
        .zip(&per)
        .filter(|(nb, _)| nb.len() >= 2)
        .map(|(nb, &t)| {
            let d = nb.len() as f64;
            t as f64 / (d * (d - 1.0) / 2.0)
        })
        .sum();
    total / n as f64
}
