//! Haar wavelet synopses and reconstruction error metrics.

use crate::error::{Error, Result};

/// Unnormalized Haar coefficients: `coeffs[0]` is the overall average and
/// `coeffs[i]` for `i >= 1` is detail `i`, at level `floor(log2 i)` with
/// level 0 the coarsest.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarTransform {
    pub coeffs: Vec<f64>,
}

impl HaarTransform {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Squared-error cost of zeroing coefficient `i`, per unit of
    /// `coeffs[i]^2`: `N` for the average and `N / 2^level` for a detail.
    pub fn energy_weight(&self, i: usize) -> f64 {
        let n = self.len() as f64;
        if i == 0 {
            n
        } else {
            n / (1u64 << i.ilog2()) as f64
        }
    }

    /// Number of nonzero coefficients.
    pub fn nonzero(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0.0).count()
    }
}

/// Pairwise averages `(a+b)/2` and details `(a-b)/2`, recursively.
pub fn haar_forward(values: &[f64]) -> Result<HaarTransform> {
    let n = values.len();
    if !n.is_power_of_two() {
        return Err(Error::Shape(format!("Haar input length must be a power of two, got {n}")));
    }
    let mut coeffs = vec![0.0; n];
    let mut avg = values.to_vec();
    while avg.len() > 1 {
        let half = avg.len() / 2;
        let next: Vec<f64> = avg.chunks(2).map(|p| (p[0] + p[1]) / 2.0).collect();
        for (k, p) in avg.chunks(2).enumerate() {
            coeffs[half + k] = (p[0] - p[1]) / 2.0;
        }
        avg = next;
    }
    coeffs[0] = avg[0];
    Ok(HaarTransform { coeffs })
}

pub fn haar_inverse(t: &HaarTransform) -> Vec<f64> {
    let n = t.len();
    if n == 0 {
        return Vec::new();
    }
    let mut cur = vec![t.coeffs[0]];
    while cur.len() < n {
        let half = cur.len();
        cur = cur
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| {
                let d = t.coeffs[half + k];
                [a + d, a - d]
            })
            .collect();
    }
    cur
}

/// Keeps the average plus the `B - 1` details with the largest weighted
/// magnitude `|c| sqrt(energy_weight)`, ties to the lower index. This
/// minimizes the L2 reconstruction error among all `B`-subsets containing
/// the average.
pub fn haar_threshold(t: &HaarTransform, keep: usize) -> Result<HaarTransform> {
    let n = t.len();
    if keep == 0 || keep > n {
        return Err(Error::InvalidArgument(format!(
            "coefficient budget must lie in 1..={n}, got {keep}"
        )));
    }
    let mut order: Vec<usize> = (1..n).collect();
    let score = |i: usize| t.coeffs[i].abs() * t.energy_weight(i).sqrt();
    order.sort_by(|&a, &b| score(b).total_cmp(&score(a)).then(a.cmp(&b)));
    let mut coeffs = vec![0.0; n];
    coeffs[0] = t.coeffs[0];
    for &i in &order[..keep - 1] {
        coeffs[i] = t.coeffs[i];
    }
    Ok(HaarTransform { coeffs })
}

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!("vectors differ in length ({} vs {})", a.len(), b.len())));
    }
    Ok(())
}

pub fn l2_error(a: &[f64], approx: &[f64]) -> Result<f64> {
    lp_error(a, approx, 2.0)
}

pub fn max_abs_error(a: &[f64], approx: &[f64]) -> Result<f64> {
    check_lengths(a, approx)?;
    Ok(a.iter().zip(approx).fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs())))
}

/// `max |A[i] - Ã[i]| / |A[i]|`; an entry with `A[i] = 0` contributes
/// infinity unless it is reproduced exactly.
pub fn max_rel_error(a: &[f64], approx: &[f64]) -> Result<f64> {
    check_lengths(a, approx)?;
    Ok(a.iter().zip(approx).fold(0.0, |m, (x, y)| {
        let d = (x - y).abs();
        let r = if d == 0.0 { 0.0 } else { d / x.abs() };
        f64::max(m, r)
    }))
}

pub fn lp_error(a: &[f64], approx: &[f64], p: f64) -> Result<f64> {
    weighted_lp_error(a, approx, &vec![1.0; a.len()], p)
}

pub fn weighted_lp_error(a: &[f64], approx: &[f64], w: &[f64], p: f64) -> Result<f64> {
    check_lengths(a, approx)?;
    check_lengths(a, w)?;
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidArgument(format!("norm order must be positive, got {p}")));
    }
    let s: f64 = a
        .iter()
        .zip(approx)
        .zip(w)
        .map(|((x, y), wi)| wi * (x - y).abs().powf(p))
        .sum();
    Ok(s.powf(1.0 / p))
}
