//! Finite groups, Cayley graphs, left-invariant forms, the Maurer–Cartan
//! connection and character eigenvectors of abelian Cayley graphs.

mod characters;
mod group;

use num_traits::{Signed, Zero};

use crate::calculus::{Form, OneForm};
use crate::error::{Error, Result};
use crate::geometry::{ConnectionData, Metric};
use crate::graph::Digraph;
use crate::laplacian::edge_laplacian_general;
use crate::linalg::{rat, RatMatrix, Rational};

pub use characters::{characters, circulant_eigenvectors, Candidate, CandidateKind, Character, CirculantReport};
pub use group::{FiniteGroup, GeneratingSet};

/// The Cayley digraph `x → xa`, `a ∈ C`, with vertices the group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyGraph {
    group: FiniteGroup,
    generators: GeneratingSet,
    graph: Digraph,
}

/// Requires `C` closed under inverses and generating `G`.
pub fn cayley_graph(group: &FiniteGroup, generators: &GeneratingSet) -> Result<CayleyGraph> {
    if !generators.closed_under_inverse {
        return Err(Error::InvalidGenerators("not closed under inverse".into()));
    }
    if !generators.generates {
        return Err(Error::InvalidGenerators("does not generate the group".into()));
    }
    let n = group.order();
    let arrows = (0..n).flat_map(|x| generators.elements().iter().map(move |&a| (x, group.mul(x, a))));
    let graph = Digraph::new(n, arrows.collect::<Vec<_>>())?;
    Ok(CayleyGraph {
        group: group.clone(),
        generators: generators.clone(),
        graph,
    })
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.generators
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// `x⁻¹y` for an arrow `x → y`.
    pub fn arrow_generator(&self, x: usize, y: usize) -> usize {
        self.group.mul(self.group.inv(x), y)
    }

    /// `e_a = Σ_x ω_{x→xa}`.
    pub fn invariant_form(&self, a: usize) -> OneForm {
        Form::from_terms(
            &self.graph,
            (0..self.group.order()).map(|x| ([x, self.group.mul(x, a)], rat(1))),
        )
        .expect("generator arrows exist")
    }

    /// `|C| × E` matrix whose row `i` holds the arrow coordinates of
    /// `e_{C[i]}`.
    pub fn embedding(&self) -> RatMatrix {
        let e = self.graph.n_arrows();
        let mut m = RatMatrix::zeros(self.generators.len(), e);
        for (i, &(x, y)) in self.graph.arrows().iter().enumerate() {
            let a = self.arrow_generator(x, y);
            m[(self.generators.position(a).expect("generator"), i)] = rat(1);
        }
        m
    }

    /// Arrow coordinates of `Σ_a v^a e_a` for functions `v^a` given as
    /// value rows, one per generator.
    pub fn combine<T: Clone + Zero>(&self, v: &[Vec<T>]) -> Vec<T> {
        self.graph
            .arrows()
            .iter()
            .map(|&(x, y)| {
                let a = self.generators.position(self.arrow_generator(x, y)).expect("generator");
                v[a][x].clone()
            })
            .collect()
    }
}

/// `σ(ω_{x→y}⊗ω_{y→z}) = ω_{x→xy⁻¹z}⊗ω_{xy⁻¹z→z}`, `α = 0`; needs `C`
/// stable under conjugation by its own elements.
pub fn maurer_cartan(cg: &CayleyGraph) -> Result<ConnectionData> {
    if !cg.generators.ad_stable {
        return Err(Error::InvalidGenerators("not stable under conjugation".into()));
    }
    let g = &cg.group;
    ConnectionData::from_reroute(&cg.graph, |[x, y, z]| g.mul(g.mul(x, g.inv(y)), z))
}

/// `Δe_a = 2(|C|e_a − Σ_b e_{b⁻¹ab})` on the invariant forms, rows labelled
/// by inputs in generator order.
pub fn invariant_form_laplacian(cg: &CayleyGraph) -> Result<RatMatrix> {
    if !cg.generators.ad_stable {
        return Err(Error::InvalidGenerators("not stable under conjugation".into()));
    }
    let c = cg.generators.elements();
    let mut m = RatMatrix::zeros(c.len(), c.len());
    let size = rat(c.len() as i64);
    for (i, &a) in c.iter().enumerate() {
        m[(i, i)] += rat(2) * &size;
        for &b in c {
            let j = cg.generators.position(cg.group.conjugate(a, b)).expect("ad-stable");
            m[(i, j)] -= rat(2);
        }
    }
    Ok(m)
}

/// Whether `B ℒ = M B` for the embedding `B`, the Maurer–Cartan edge
/// Laplacian `ℒ` with Euclidean metric and the invariant matrix `M`.
pub fn invariant_laplacian_consistent(cg: &CayleyGraph) -> Result<bool> {
    let conn = maurer_cartan(cg)?;
    let met = Metric::euclidean(&cg.graph)?;
    let full = edge_laplacian_general(&conn, &met)?;
    let b = cg.embedding();
    let m = invariant_form_laplacian(cg)?;
    Ok(b.mul(&full.matrix)? == m.mul(&b)?)
}

/// Eigenvalues of the invariant-form Laplacian; it has integer entries and
/// all cases of interest have integer spectra, so exact integer roots of
/// the characteristic polynomial are returned with multiplicity and the
/// count of any remaining roots is reported separately.
pub fn invariant_integer_spectrum(m: &RatMatrix) -> Result<(Vec<(Rational, usize)>, usize)> {
    let p = m.charpoly()?;
    let bound = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
        .ceil()
        .to_integer();
    let bound: i64 = bound.try_into().map_err(|_| Error::Dimension("entries too large".into()))?;
    let mut found = Vec::new();
    let mut total = 0;
    for k in (-bound..=bound).rev() {
        let r = rat(k);
        let mult = p.root_multiplicity(&r);
        if mult > 0 {
            found.push((r, mult));
            total += mult;
        }
    }
    Ok((found, m.rows() - total))
}
