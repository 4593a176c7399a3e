use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub authority: Vec<f64>,
    pub hub: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn l2_normalize(v: &mut [f64]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

fn l2_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Alternates `a = A^T h`, `h = A a` with L2 normalization until both move
/// by at most `tol`. A graph without edges yields uniform vectors and
/// `converged = false`.
pub fn hits(g: &Graph, tol: f64, max_iter: usize) -> HitsResult {
    let n = g.n();
    let out = g.weighted_out();
    let uniform = vec![1.0 / (n as f64).sqrt(); n];
    let mut hub = uniform.clone();
    let mut auth = uniform.clone();
    for t in 1..=max_iter {
        let mut a = vec![0.0; n];
        for (u, row) in out.iter().enumerate() {
            for &(v, w) in row {
                a[v] += w * hub[u];
            }
        }
        let mut h: Vec<f64> = out
            .iter()
            .map(|row| row.iter().map(|&(v, w)| w * a[v]).sum())
            .collect();
        if !l2_normalize(&mut a) || !l2_normalize(&mut h) {
            return HitsResult {
                authority: uniform.clone(),
                hub: uniform,
                iterations: t,
                converged: false,
            };
        }
        let moved = l2_distance(&a, &auth).max(l2_distance(&h, &hub));
        auth = a;
        hub = h;
        if moved <= tol {
            return HitsResult {
                authority: auth,
                hub,
                iterations: t,
                converged: true,
            };
        }
    }
    HitsResult {
        authority: auth,
        hub,
        iterations: max_iter,
        converged: false,
    }
}
