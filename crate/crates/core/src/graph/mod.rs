//! Finite digraphs without self-loops or parallel arrows.

mod coloring;
mod morphism;
pub mod named;
mod parse;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub use coloring::{difactor_coloring, ArcColoring, ColoringMode};
pub use morphism::{check_morphism, GraphMorphism};
pub use parse::parse_digraph;

/// Arrows are kept in lexicographic `(source, target)` order; every matrix
/// indexed by arrows uses this order.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arrows: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degrees {
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
    /// Present only for bidirected graphs.
    pub undirected: Option<Vec<usize>>,
}

impl Digraph {
    pub fn new(n_vertices: usize, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (s, t) in arrows {
            if s >= n_vertices || t >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "arrow {s} -> {t} out of range for {n_vertices} vertices"
                )));
            }
            if s == t {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {s}")));
            }
            if !set.insert((s, t)) {
                return Err(Error::InvalidGraph(format!("duplicate arrow {s} -> {t}")));
            }
        }
        Ok(Self::from_sorted(n_vertices, set.into_iter().collect()))
    }

    /// Bidirected graph with both arrows for every undirected edge.
    pub fn from_edges(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arrows: Vec<_> = edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Self::new(n_vertices, arrows)
    }

    fn from_sorted(n: usize, arrows: Vec<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(arrows.len());
        for (i, &(s, t)) in arrows.iter().enumerate() {
            out_adj[s].push(t);
            in_adj[t].push(s);
            index.insert((s, t), i);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Self {
            n,
            arrows,
            index,
            out_adj,
            in_adj,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_index(&self, s: usize, t: usize) -> Option<usize> {
        self.index.get(&(s, t)).copied()
    }

    pub fn has_arrow(&self, s: usize, t: usize) -> bool {
        self.index.contains_key(&(s, t))
    }

    /// Targets of arrows leaving `x`, ascending.
    pub fn out_neighbors(&self, x: usize) -> &[usize] {
        &self.out_adj[x]
    }

    /// Sources of arrows entering `x`, ascending.
    pub fn in_neighbors(&self, x: usize) -> &[usize] {
        &self.in_adj[x]
    }

    /// True when consecutive entries of `path` are arrows.
    pub fn is_path(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.has_arrow(w[0], w[1]))
    }

    /// All composable 2-paths `x -> y -> z`, lexicographic.
    pub fn two_paths(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(x, y) in &self.arrows {
            for &z in &self.out_adj[y] {
                out.push([x, y, z]);
            }
        }
        out
    }

    /// All composable 3-paths, lexicographic.
    pub fn three_paths(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for [x, y, z] in self.two_paths() {
            for &w in &self.out_adj[z] {
                out.push([x, y, z, w]);
            }
        }
        out
    }

    pub fn is_bidirected(&self) -> bool {
        self.arrows.iter().all(|&(s, t)| self.has_arrow(t, s))
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the weakly connected components, each ascending,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Induced subgraph on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Digraph> {
        let mut relabel = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
            }
            relabel.insert(v, i);
        }
        let arrows = self.arrows.iter().filter_map(|(s, t)| Some((*relabel.get(s)?, *relabel.get(t)?)));
        Digraph::new(vertices.len(), arrows)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out_adj.iter().map(Vec::len).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.in_adj.iter().map(Vec::len).collect()
    }

    /// Number of undirected edges at each vertex of a bidirected graph.
    pub fn undirected_degrees(&self) -> Result<Vec<usize>> {
        if !self.is_bidirected() {
            return Err(Error::NotBidirected);
        }
        Ok(self.out_degrees())
    }

    pub fn degrees(&self) -> Degrees {
        Degrees {
            out_degree: self.out_degrees(),
            in_degree: self.in_degrees(),
            undirected: self.undirected_degrees().ok(),
        }
    }

    /// Edge-list text readable by [`parse_digraph`]: reciprocal pairs are
    /// written once as `u v`, lone arrows as `u -> v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut covered: BTreeSet<usize> = (0..self.n).collect();
        for &(s, t) in &self.arrows {
            covered.remove(&s);
            covered.remove(&t);
            if self.has_arrow(t, s) {
                if s < t {
                    out.push_str(&format!("{s} {t}\n"));
                }
            } else {
                out.push_str(&format!("{s} -> {t}\n"));
            }
        }
        for v in covered {
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n_vertices", &self.n)
            .field("arrows", &self.arrows)
            .finish()
    }
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Digraph", 2)?;
        st.serialize_field("n_vertices", &self.n)?;
        st.serialize_field("arrows", &self.arrows)?;
        st.end()
    }
}
