//! Exact and numeric toolkit for the family `A_n` of `n × n` symmetric
//! tridiagonal matrices with zero diagonal and unit off-diagonals (the
//! adjacency matrices of path graphs).
//!
//! - [`polycore`]: integer polynomials, Gaussian integers, binomials, Bareiss determinants
//! - [`charpoly`]: `f_n(λ) = det(A_n − λI)` by recurrence, closed form, and determinant oracle
//! - [`spectrum`]: closed-form eigenvalues, radius and Golub bounds, containment certificates
//! - [`chebyshev`]: `U_n`, `S_n` and the substitutions linking them to `f_n`
//! - [`fibexplore`]: roots of `f_n(λ) − F_{n+1}`, conic fits, scans and extrema

// NaN-rejecting comparisons are written as `!(x > y)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charpoly;
pub mod chebyshev;
pub mod error;
pub mod fibexplore;
pub mod polycore;
pub mod spectrum;

pub use error::{Error, Result};
pub use polycore::{GaussianInt, IntMatrix, IntPoly};
