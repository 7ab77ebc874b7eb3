//! Exact rational linear algebra plus the two floating-point extractors
//! (symmetric Jacobi, polynomial roots) used only for spectra.

mod jacobi;
mod matrix;
mod poly;
pub mod rational;
mod roots;

pub use jacobi::{frobenius, jacobi_f64, residual, sym_eigensolve, EigenPair};
pub use matrix::RatMatrix;
pub use poly::RatPolynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use roots::{aberth, poly_roots, poly_roots_with_merge, Root, DEFAULT_MERGE_RADIUS};
