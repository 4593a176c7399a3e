//! Streaming summaries, semi-streaming graph algorithms and the PageRank
//! family, with exact reference implementations for testing.

pub mod cli;
pub mod codec;
pub mod counters;
pub mod error;
pub mod freq_sketches;
pub mod graph;
pub mod graph_stream;
pub mod hashing;
pub mod pagerank;
pub mod samplers;
pub mod stream;
pub mod summaries;

pub use error::{Error, Result};
pub use hashing::HashSeed;
