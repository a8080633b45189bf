//! Exact tools for multipartite Turán-type density problems.
//!
//! The crate models ℓ-partite graphs with exact rational part densities and
//! provides clique, independence, blow-up and edge-score operations
//! ([`graph`]), the class-structured extremal families ([`extremal`]),
//! executable checks for the triangle-forcing density conditions
//! ([`oracles`]), and searches for `K^k`-free graphs with large minimum
//! pairwise density ([`search`]).

pub mod cli;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use graph::{DensityMatrix, GraphBuilder, MultipartiteGraph, Vertex};
pub use scalar::{Rational, Scalar};

/// Density table over the crate's exact rational type.
pub type ExactDensityMatrix = DensityMatrix<Rational>;
/// Density table over `f64`, for display only.
pub type FloatDensityMatrix = DensityMatrix<f64>;
/// Density table over arbitrary-precision rationals.
pub type BigDensityMatrix = DensityMatrix<num_rational::BigRational>;
