//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use sketchlab::graph::Graph;

pub const INF: u64 = u64::MAX / 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi edge set without self-loops, `u < v` for undirected graphs.
pub fn random_pairs(n: usize, p: f64, directed: bool, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.random::<f64>() < p {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn random_graph(n: usize, p: f64, directed: bool, rng: &mut impl Rng) -> Graph {
    Graph::from_edges(n, directed, random_pairs(n, p, directed, rng)).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, false, pairs).unwrap()
}

/// Hop distances between all pairs of an undirected graph.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = d[u][v].min(1);
        d[v][u] = d[v][u].min(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Component id per vertex by breadth-first search.
pub fn bfs_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    q.push_back(y);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn adjacency_matrix(n: usize, edges: &[(usize, usize)], directed: bool) -> Vec<Vec<u64>> {
    let mut a = vec![vec![0u64; n]; n];
    for &(u, v) in edges {
        a[u][v] = 1;
        if !directed {
            a[v][u] = 1;
        }
    }
    a
}

/// `trace(A^3) / 6` for a simple undirected graph.
pub fn triangles_by_trace(n: usize, edges: &[(usize, usize)]) -> u64 {
    let a = adjacency_matrix(n, edges, false);
    let mut t = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t += a[i][j] * a[j][k] * a[k][i];
            }
        }
    }
    t / 6
}

/// Zipf-distributed items in `[0, universe)`.
pub fn zipf_stream(len: usize, universe: u64, s: f64, seed: u64) -> Vec<u64> {
    let z = Zipf::new(universe as f64, s).unwrap();
    let mut r = rng(seed);
    (0..len).map(|_| z.sample(&mut r) as u64 - 1).collect()
}

pub fn frequencies(items: &[u64]) -> HashMap<u64, i64> {
    let mut f = HashMap::new();
    for &i in items {
        *f.entry(i).or_insert(0) += 1;
    }
    f
}

pub fn moment(f: &HashMap<u64, i64>, k: u32) -> f64 {
    f.values().map(|&c| (c as f64).powi(k as i32)).sum()
}

/// Stationary vector of the chain that follows an out-edge with probability
/// `beta` and otherwise jumps by `p`; dangling vertices always jump. Plain
/// power iteration on edge lists.
pub fn pagerank_oracle(n: usize, edges: &[(usize, usize)], beta: f64, p: &[f64]) -> Vec<f64> {
    let mut out = vec![Vec::new(); n];
    for &(u, v) in edges {
        out[u].push(v);
    }
    let mut pi = vec![1.0 / n as f64; n];
    for _ in 0..100_000 {
        let mut next = vec![0.0; n];
        let mut leak = 0.0;
        for u in 0..n {
            if out[u].is_empty() {
                leak += pi[u];
            } else {
                leak += (1.0 - beta) * pi[u];
                let share = pi[u] / out[u].len() as f64;
                for &v in &out[u] {
                    next[v] += beta * share;
                }
            }
        }
        for v in 0..n {
            next[v] += leak * p[v];
        }
        let diff: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if diff < 1e-15 {
            break;
        }
    }
    pi
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
