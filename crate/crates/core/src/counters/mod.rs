//! Probabilistic counting of events (F1) and distinct items (F0).

mod fm;
mod hll;
mod morris;

pub use fm::{rho, FmBitmap};
pub use hll::{alpha, HllSketch, MAX_PRECISION, MIN_PRECISION};
pub use morris::{MorrisCounter, MorrisPlus};
