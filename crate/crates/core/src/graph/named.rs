//! Small bidirected fixture graphs.

use super::Digraph;
use crate::error::{Error, Result};

/// The m-gon with vertices `0..m` and edges `i -- i+1`.
pub fn cycle(m: usize) -> Result<Digraph> {
    if m < 3 {
        return Err(Error::InvalidGraph(format!("cycle needs at least 3 vertices, got {m}")));
    }
    Digraph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Digraph> {
    Digraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Result<Digraph> {
    Digraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `K_{1,k}` with centre `0`.
pub fn star(k: usize) -> Result<Digraph> {
    Digraph::from_edges(k + 1, (1..=k).map(|i| (0, i)))
}

/// Triangular prism: triangles `0,1,2` and `3,4,5` joined by `i -- i+3`.
pub fn prism() -> Result<Digraph> {
    Digraph::from_edges(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
}

/// Triangle `0,1,2` with a pendant vertex `3` on `0`.
pub fn paw() -> Result<Digraph> {
    Digraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
}

/// Complete bipartite `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Digraph> {
    Digraph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}
