use super::Digraph;
use crate::error::{Error, Result};

/// Vertex map `psi` between digraphs. Every arrow `w -> z` of the domain
/// must either collapse (`psi(w) = psi(z)`) or land on an arrow.
#[derive(Debug, Clone)]
pub struct GraphMorphism {
    pub domain: Digraph,
    pub codomain: Digraph,
    pub psi: Vec<usize>,
}

impl GraphMorphism {
    /// Checks lengths and ranges, then the morphism condition.
    pub fn new(domain: Digraph, codomain: Digraph, psi: Vec<usize>) -> Result<Self> {
        let m = Self::unchecked(domain, codomain, psi)?;
        if !check_morphism(&m) {
            return Err(Error::InvalidMorphism(
                "some arrow maps to a non-arrow between distinct vertices".into(),
            ));
        }
        Ok(m)
    }

    /// Checks lengths and ranges only.
    pub fn unchecked(domain: Digraph, codomain: Digraph, psi: Vec<usize>) -> Result<Self> {
        if psi.len() != domain.n_vertices() {
            return Err(Error::InvalidMorphism(format!(
                "vertex map has length {}, domain has {} vertices",
                psi.len(),
                domain.n_vertices()
            )));
        }
        if let Some(&v) = psi.iter().find(|&&v| v >= codomain.n_vertices()) {
            return Err(Error::InvalidMorphism(format!("image vertex {v} out of range")));
        }
        Ok(Self { domain, codomain, psi })
    }

    pub fn identity(g: &Digraph) -> Self {
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            psi: (0..g.n_vertices()).collect(),
        }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism> {
        if self.codomain != other.domain {
            return Err(Error::InvalidMorphism("codomain and domain differ".into()));
        }
        Ok(GraphMorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            psi: self.psi.iter().map(|&v| other.psi[v]).collect(),
        })
    }

    /// Domain arrows lying over the codomain arrow `x -> y`.
    pub fn fiber(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        self.domain
            .arrows()
            .iter()
            .copied()
            .filter(|&(w, z)| self.psi[w] == x && self.psi[z] == y)
            .collect()
    }
}

pub fn check_morphism(m: &GraphMorphism) -> bool {
    m.psi.len() == m.domain.n_vertices()
        && m.domain.arrows().iter().all(|&(w, z)| {
            let (a, b) = (m.psi[w], m.psi[z]);
            a == b || m.codomain.has_arrow(a, b)
        })
}
