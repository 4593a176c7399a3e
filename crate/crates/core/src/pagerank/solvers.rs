use rand::Rng;

use super::alias::AliasTable;
use super::model::{ConvergenceCriterion, RankVector, TransitionModel};
use crate::error::{Error, Result};
use crate::hashing::HashSeed;

/// Largest vertex count for the dense direct solve.
pub const ALGEBRAIC_LIMIT: usize = 4096;
/// Largest vertex count for a full personalized basis.
pub const BASIS_LIMIT: usize = 512;

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
    v
}

/// Solves `x (I - beta M) = (1 - beta) p` directly, where `M` is the
/// row-normalized adjacency with dangling rows replaced by `p`. With
/// `beta = 1` one equation is swapped for `sum(x) = 1`.
pub fn pagerank_algebraic(model: &TransitionModel) -> Result<RankVector> {
    let n = model.n();
    if n > ALGEBRAIC_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "direct solve is limited to {ALGEBRAIC_LIMIT} vertices, got {n}"
        )));
    }
    let beta = model.beta();
    let p = model.personalization();
    // Row j of the system is column j of (I - beta M).
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        a[i * n + i] += 1.0;
        if model.is_dangling(i) {
            for (j, &pj) in p.iter().enumerate() {
                a[j * n + i] -= beta * pj;
            }
        } else {
            for &(j, q) in model.out_probabilities(i) {
                a[j * n + i] -= beta * q;
            }
        }
    }
    let mut b: Vec<f64> = p.iter().map(|&x| (1.0 - beta) * x).collect();
    if beta == 1.0 {
        a[(n - 1) * n..].iter_mut().for_each(|x| *x = 1.0);
        b[n - 1] = 1.0;
    }
    let x = solve_dense(n, a, b)?;
    Ok(RankVector {
        scores: normalize(x.into_iter().map(|v| v.max(0.0)).collect()),
        iterations: 0,
        converged: true,
    })
}

/// Gaussian elimination with partial pivoting on a row-major `n x n` system.
fn solve_dense(n: usize, mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .unwrap();
        if a[pivot * n + col].abs() <= 1e-12 * scale {
            return Err(Error::Singular(
                "the chain has no unique stationary distribution (reducible with beta = 1)".into(),
            ));
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            b.swap(pivot, col);
        }
        let d = a[col * n + col];
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r * n + k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r * n + r];
    }
    Ok(x)
}

/// Power iteration from the uniform vector.
pub fn pagerank_iterative(model: &TransitionModel, crit: &ConvergenceCriterion) -> RankVector {
    let n = model.n();
    let mut pi = vec![1.0 / n as f64; n];
    for t in 1..=crit.max_iter {
        let next = normalize(model.step(&pi));
        let diff = crit.norm.distance(&next, &pi);
        pi = next;
        if diff <= crit.tol {
            return RankVector {
                scores: pi,
                iterations: t,
                converged: true,
            };
        }
    }
    RankVector {
        scores: pi,
        iterations: crit.max_iter,
        converged: false,
    }
}

/// Monte Carlo estimate from `n` persistent walkers, one started on each
/// vertex. Each round every walker takes one step of `P'` and `pi` becomes
/// the visit frequency over all steps so far.
pub fn pagerank_random_walk(
    model: &TransitionModel,
    crit: &ConvergenceCriterion,
    seed: HashSeed,
) -> Result<RankVector> {
    let n = model.n();
    let teleport = AliasTable::new(model.personalization())?;
    let follow: Vec<Option<AliasTable>> = (0..n)
        .map(|i| {
            let row = model.out_probabilities(i);
            if row.is_empty() {
                Ok(None)
            } else {
                let w: Vec<f64> = row.iter().map(|&(_, q)| q).collect();
                AliasTable::new(&w).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let beta = model.beta();
    let mut rng = seed.rng();
    let mut walkers: Vec<usize> = (0..n).collect();
    let mut pi = vec![0.0; n];
    let mut visits = 0.0f64;
    for round in 1..=crit.max_iter {
        let prev = pi.clone();
        let scale = visits / (visits + n as f64);
        let inc = 1.0 / (visits + n as f64);
        pi.iter_mut().for_each(|x| *x *= scale);
        for w in &mut walkers {
            let next = match &follow[*w] {
                Some(table) if beta == 1.0 || rng.random::<f64>() < beta => {
                    model.out_probabilities(*w)[table.sample(&mut rng)].0
                }
                _ => teleport.sample(&mut rng),
            };
            *w = next;
            pi[next] += inc;
        }
        visits += n as f64;
        if round > 1 && crit.norm.distance(&pi, &prev) <= crit.tol {
            return Ok(RankVector {
                scores: pi,
                iterations: round,
                converged: true,
            });
        }
    }
    Ok(RankVector {
        scores: pi,
        iterations: crit.max_iter,
        converged: false,
    })
}

/// `pi(e_i)` for every vertex `i`, by power iteration.
pub fn personalized_basis(model: &TransitionModel, crit: &ConvergenceCriterion) -> Result<Vec<RankVector>> {
    let n = model.n();
    if n > BASIS_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "personalized basis is limited to {BASIS_LIMIT} vertices, got {n}"
        )));
    }
    (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            Ok(pagerank_iterative(&model.with_personalization(e)?, crit))
        })
        .collect()
}

/// `sum_i p_i pi(e_i)`.
pub fn combine_basis(basis: &[RankVector], p: &[f64]) -> Result<Vec<f64>> {
    if basis.len() != p.len() {
        return Err(Error::Shape(format!(
            "basis has {} vectors, weights have length {}",
            basis.len(),
            p.len()
        )));
    }
    let n = basis.first().map_or(0, |r| r.scores.len());
    let mut out = vec![0.0; n];
    for (r, &w) in basis.iter().zip(p) {
        for (o, &s) in out.iter_mut().zip(&r.scores) {
            *o += w * s;
        }
    }
    Ok(out)
}

/// Vertices by descending score, ties by ascending id. A score within
/// `1e-9 * max|score|` below the first score of its run counts as a tie.
pub fn rank_order(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let top = scores.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let tol = 1e-9 * top;
    let mut start = 0;
    while start < idx.len() {
        let lead = scores[idx[start]];
        let mut end = start + 1;
        while end < idx.len() && lead - scores[idx[end]] <= tol {
            end += 1;
        }
        idx[start..end].sort_unstable();
        start = end;
    }
    idx
}
