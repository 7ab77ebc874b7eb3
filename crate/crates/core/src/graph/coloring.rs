use serde::Serialize;

use super::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    /// Each color at most once among the out-arrows of every vertex.
    Left,
    /// Each color exactly once among out-arrows and once among in-arrows.
    Simultaneous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcColoring {
    /// Color of each arrow, indexed like `Digraph::arrows`.
    pub colors: Vec<usize>,
    pub k: usize,
}

impl ArcColoring {
    /// Arrows of color `c`.
    pub fn class(&self, g: &Digraph, c: usize) -> Vec<(usize, usize)> {
        g.arrows()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &col)| col == c)
            .map(|(&a, _)| a)
            .collect()
    }

    pub fn is_valid(&self, g: &Digraph, mode: ColoringMode) -> bool {
        if self.colors.len() != g.n_arrows() || self.colors.iter().any(|&c| c >= self.k) {
            return false;
        }
        let n = g.n_vertices();
        let mut out_seen = vec![vec![0usize; self.k]; n];
        let mut in_seen = vec![vec![0usize; self.k]; n];
        for (&(s, t), &c) in g.arrows().iter().zip(&self.colors) {
            out_seen[s][c] += 1;
            in_seen[t][c] += 1;
        }
        match mode {
            ColoringMode::Left => out_seen.iter().flatten().all(|&m| m <= 1),
            ColoringMode::Simultaneous => out_seen.iter().chain(&in_seen).flatten().all(|&m| m == 1),
        }
    }

    /// For a simultaneous coloring: the vertex permutation traced by color `c`.
    pub fn permutation(&self, g: &Digraph, c: usize) -> Option<Vec<usize>> {
        let mut perm = vec![usize::MAX; g.n_vertices()];
        for (s, t) in self.class(g, c) {
            perm[s] = t;
        }
        perm.iter().all(|&v| v != usize::MAX).then_some(perm)
    }
}

/// Colors arrows so that each color class is a left basis element (left
/// mode) or a 1-difactor (simultaneous mode). Simultaneous mode peels off
/// one perfect matching of the out/in bipartite double at a time.
pub fn difactor_coloring(g: &Digraph, mode: ColoringMode) -> Result<ArcColoring> {
    let outs = g.out_degrees();
    let k = outs.first().copied().unwrap_or(0);
    if outs.iter().any(|&d| d != k) {
        return Err(Error::NotRegular("out-degrees are not constant".into()));
    }
    match mode {
        ColoringMode::Left => {
            let mut colors = vec![0; g.n_arrows()];
            for x in 0..g.n_vertices() {
                for (c, &y) in g.out_neighbors(x).iter().enumerate() {
                    colors[g.arrow_index(x, y).expect("arrow")] = c;
                }
            }
            Ok(ArcColoring { colors, k })
        }
        ColoringMode::Simultaneous => {
            if g.in_degrees().iter().any(|&d| d != k) {
                return Err(Error::NotRegular("in-degrees differ from the constant out-degree".into()));
            }
            let n = g.n_vertices();
            let mut remaining: Vec<Vec<usize>> = (0..n).map(|x| g.out_neighbors(x).to_vec()).collect();
            let mut colors = vec![usize::MAX; g.n_arrows()];
            for c in 0..k {
                let matched = perfect_matching(&remaining).ok_or_else(|| {
                    Error::NotRegular("bipartite double has no perfect matching".into())
                })?;
                for (x, &y) in matched.iter().enumerate() {
                    colors[g.arrow_index(x, y).expect("arrow")] = c;
                    remaining[x].retain(|&t| t != y);
                }
            }
            Ok(ArcColoring { colors, k })
        }
    }
}

/// Perfect matching of left vertices `x` to right vertices via `adj[x]`,
/// by augmenting paths. Returns the partner of each left vertex.
fn perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut match_right = vec![usize::MAX; n];
    for x in 0..n {
        let mut visited = vec![false; n];
        if !augment(x, adj, &mut match_right, &mut visited) {
            return None;
        }
    }
    let mut partner = vec![usize::MAX; n];
    for (y, &x) in match_right.iter().enumerate() {
        if x != usize::MAX {
            partner[x] = y;
        }
    }
    partner.iter().all(|&y| y != usize::MAX).then_some(partner)
}

fn augment(x: usize, adj: &[Vec<usize>], match_right: &mut [usize], visited: &mut [bool]) -> bool {
    for &y in &adj[x] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        if match_right[y] == usize::MAX || augment(match_right[y], adj, match_right, visited) {
            match_right[y] = x;
            return true;
        }
    }
    false
}
