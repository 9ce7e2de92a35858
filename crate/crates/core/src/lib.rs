//! Quantization of nearest-neighbor probabilistic cellular automata.
//!
//! The crate builds the Domany-Kinzel family of local update operators,
//! realizes them as Markov chains on loop-decorated configuration graphs,
//! constructs the orthogonal quantization U = 2 K L^T - J on the arc space,
//! and analyzes det(I - uU): its symmetrized-matrix factorization, its
//! spectrum, and — when the reciprocal zeta function is a cyclotomic
//! product — the associated absolute zeta function expressed through
//! multiple gamma and multiple sine functions, evaluated numerically.

pub mod abszeta;
pub mod cyclotomic;
pub mod error;
pub mod graph;
pub mod ips;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod quantize;
pub mod scalar;
pub mod zeta;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use poly::{Polynomial, RationalFunction};
pub use scalar::{Rat, RealScalar, Scalar};
