//! Semi-streaming graph reductions.

mod connectivity;
mod spanner;
mod sparsifier;
mod triangles;

pub use connectivity::{cc_sketch, cc_sketch_rounds, connected_components, Components, EdgeUpdate};
pub use spanner::{spanner, Spanner};
pub use sparsifier::{cut_value, keep_probability, min_cut, sparsify, sparsify_with_probability, Sparsified};
pub use triangles::{
    clustering_coefficient, count_triangles_bruteforce, count_triangles_moments, triangle_moments,
    triangle_token, MomentMode, TriangleMoments,
};
