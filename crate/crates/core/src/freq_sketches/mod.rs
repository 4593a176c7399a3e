//! Frequency and frequency-moment sketches.

mod bloom;
mod count_min;
mod count_sketch;
mod moments;

pub use bloom::BloomFilter;
pub use count_min::CmSketch;
pub use count_sketch::CountSketch;
pub use moments::FkEstimator;

/// Update model of a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamModel {
    /// Counts only grow.
    CashRegister,
    /// Deltas of either sign.
    Turnstile,
}

/// Median of integers; an even count averages the two middle values,
/// rounding halves away from zero.
pub(crate) fn median_i64(values: &mut [i64]) -> i64 {
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        return values[n / 2];
    }
    let s = values[n / 2 - 1] as i128 + values[n / 2] as i128;
    ((s + s.signum()) / 2) as i64
}

pub(crate) fn median_f64(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
