//! Pathwidth of directed graphs via separation chains.
//!
//! The crate decides whether a digraph has pathwidth at most `k`,
//! emitting a verified path-decomposition on success, and ships the
//! surrounding toolkit: an exact subset-DP oracle, obstacle-based lower
//! bound certificates for semicomplete digraphs, regular graph
//! completion, and an independent-set sampler with uniform vertex
//! marginals and sub-Gaussian concentration.

#![forbid(unsafe_code)]

pub mod bitset;
pub mod decomposition;
pub mod digraph;
pub mod error;
pub mod exhaustive;
pub mod io;
pub mod obstacles;
pub mod oracle;
pub mod sampler;
pub mod separations;
pub mod solver;
pub mod ugraph;

pub use bitset::VertexSet;
pub use decomposition::{chain_to_decomposition, validate_decomposition, PathDecomposition};
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use separations::{Separation, SeparationChain};
pub use solver::{compute_pathwidth, solve, solve_with, Instance, SolveConfig, SolveStats};
pub use ugraph::UGraph;
