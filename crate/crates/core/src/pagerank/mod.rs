//! PageRank solvers on the damped, personalized transition chain, plus
//! SimRank and HITS.

mod alias;
mod hits;
mod model;
mod simrank;
mod solvers;

pub use alias::AliasTable;
pub use hits::{hits, HitsResult};
pub use model::{ConvergenceCriterion, Norm, RankVector, TransitionModel, DEFAULT_BETA};
pub use simrank::{simrank, SimRank, SimRankMatrix};
pub use solvers::{
    combine_basis, pagerank_algebraic, pagerank_iterative, pagerank_random_walk, personalized_basis,
    rank_order, ALGEBRAIC_LIMIT, BASIS_LIMIT,
};
