use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hashing::HashSeed;

/// `min(6 ln(n) / (lambda eps^2), 1)`.
pub fn keep_probability(n: usize, lambda: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("min-cut value must be finite and >= 0, got {lambda}")));
    }
    if n < 2 || lambda == 0.0 {
        return Ok(1.0);
    }
    Ok((6.0 * (n as f64).ln() / (lambda * epsilon * epsilon)).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sparsified {
    pub graph: Graph,
    pub p: f64,
    pub lambda: f64,
}

/// Keeps each edge occurrence independently with probability `p` and
/// reweights survivors by `1/p`. When `lambda` is `None` it is computed by
/// [`min_cut`].
pub fn sparsify(g: &Graph, epsilon: f64, lambda: Option<f64>, seed: HashSeed) -> Result<Sparsified> {
    let lambda = match lambda {
        Some(l) => l,
        None => min_cut(g),
    };
    let p = keep_probability(g.n(), lambda, epsilon)?;
    let graph = sparsify_with_probability(g, p, seed)?;
    Ok(Sparsified { graph, p, lambda })
}

pub fn sparsify_with_probability(g: &Graph, p: f64, seed: HashSeed) -> Result<Graph> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!("keep probability must lie in (0, 1], got {p}")));
    }
    if p == 1.0 {
        return Ok(g.clone());
    }
    let mut rng = seed.rng();
    let mut out = Graph::new(g.n(), g.is_directed());
    for e in g.edges() {
        if rng.random::<f64>() < p {
            out.add_weighted_edge(e.u, e.v, e.w / p)?;
        }
    }
    Ok(out)
}

/// Total weight of edges with exactly one endpoint in `side`.
pub fn cut_value(g: &Graph, side: &[bool]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| side[e.u] != side[e.v])
        .map(|e| e.w)
        .sum()
}

/// Global minimum cut of the undirected view (Stoer–Wagner). Graphs with
/// fewer than two vertices, and disconnected graphs, have cut 0.
pub fn min_cut(g: &Graph) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let mut w = vec![vec![0.0f64; n]; n];
    for e in g.edges() {
        if e.u != e.v {
            w[e.u][e.v] += e.w;
            w[e.v][e.u] += e.w;
        }
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    while alive.len() > 1 {
        let k = alive.len();
        let mut added = vec![false; k];
        let mut conn = vec![0.0f64; k];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..k {
            let mut pick = usize::MAX;
            for i in 0..k {
                if !added[i] && (pick == usize::MAX || conn[i] > conn[pick]) {
                    pick = i;
                }
            }
            added[pick] = true;
            if step == k - 1 {
                best = best.min(conn[pick]);
                last = pick;
            } else {
                prev = pick;
            }
            for i in 0..k {
                if !added[i] {
                    conn[i] += w[alive[pick]][alive[i]];
                }
            }
        }
        let (s, t) = (alive[prev], alive[last]);
        for &x in &alive {
            w[s][x] += w[t][x];
            w[x][s] = w[s][x];
        }
        w[s][s] = 0.0;
        alive.swap_remove(last);
    }
    best
}
