//! Discrete differential geometry on directed graphs: exact calculus,
//! metrics and connections, Laplacians and Cayley graph spectra.

pub mod calculus;
pub mod cayley;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod laplacian;
pub mod linalg;

pub use error::{Error, Result};
