//! Vertex and edge Laplacians.

mod spectrum;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::calculus::{tensor, theta, Form, OneForm, ScalarFunction, Tensor3};
use crate::error::{Error, Result};
use crate::geometry::{pairing_is_sigma_invariant, ConnectionData, Metric};
use crate::graph::Digraph;
use crate::linalg::{RatMatrix, RatPolynomial, Rational};

pub use crate::calculus::extended::{apply_arrow_matrix, second_order_check};
pub use crate::geometry::laplace_beltrami_0;
pub use spectrum::{
    block_triangular_form, mgon_spectrum, spectrum_by_component, theorem49_verify, Certificate, ComponentReport,
    DegreeFactor, DiagonalizabilityDefect, MgonReport, SpectrumReport, SpectrumValue, Verdict,
};

/// `L = D − A` of a bidirected graph.
pub fn vertex_laplacian(g: &Digraph) -> Result<RatMatrix> {
    let deg = g.undirected_degrees()?;
    let n = g.n_vertices();
    let mut m = RatMatrix::zeros(n, n);
    for (x, &dx) in deg.iter().enumerate() {
        m[(x, x)] = Rational::from_integer(dx.into());
    }
    for &(x, y) in g.arrows() {
        m[(x, y)] -= Rational::one();
    }
    Ok(m)
}

/// `γ_{x,y} = g_{y→x} + Σ_w g_{w→x} σ^{x,y,x}_w`, indexed like `g.arrows()`.
pub fn gamma_weights(conn: &ConnectionData, met: &Metric) -> Result<Vec<Rational>> {
    let g = conn.graph();
    if g != met.graph() {
        return Err(Error::Dimension("connection and metric live on different graphs".into()));
    }
    Ok(g.arrows()
        .iter()
        .map(|&(x, y)| {
            let mut s = met.weight(y, x).clone();
            for (w, c) in conn.sigma_image(&[x, y, x]) {
                s += met.weight(*w, x) * c;
            }
            s
        })
        .collect())
}

/// `(Δf)(x) = Σ_y (f(x) − f(y)) γ_{x,y}` as a matrix on value vectors.
pub fn weighted_vertex_laplacian(conn: &ConnectionData, met: &Metric) -> Result<RatMatrix> {
    let g = conn.graph();
    if !g.is_bidirected() {
        return Err(Error::NotBidirected);
    }
    let gamma = gamma_weights(conn, met)?;
    let n = g.n_vertices();
    let mut m = RatMatrix::zeros(n, n);
    for (&(x, y), c) in g.arrows().iter().zip(&gamma) {
        m[(x, x)] += c;
        m[(x, y)] -= c;
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Canonical,
    General,
}

/// Edge Laplacian in the arrow basis, rows labelled by inputs:
/// `Δω_i = Σ_j ℒ_{ij} ω_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLaplacianMatrix {
    pub matrix: RatMatrix,
    pub graph: Digraph,
    pub provenance: Provenance,
}

impl EdgeLaplacianMatrix {
    pub fn apply(&self, w: &OneForm) -> OneForm {
        apply_arrow_matrix(&self.graph, &self.matrix, w)
    }

    /// The matrix acting on coordinate column vectors, `ℒᵀ`.
    pub fn action_matrix(&self) -> RatMatrix {
        self.matrix.transpose()
    }

    pub fn charpoly(&self) -> RatPolynomial {
        self.matrix.charpoly().expect("edge Laplacian is square")
    }
}

/// `Δω_{x→y} = deg(x)ω_{x→y} − 2θ_y + θ_x` with `θ_x` the arrows out of `x`.
pub fn edge_laplacian_canonical(g: &Digraph) -> Result<EdgeLaplacianMatrix> {
    let deg = g.undirected_degrees()?;
    let e = g.n_arrows();
    let mut m = RatMatrix::zeros(e, e);
    let idx = |a: usize, b: usize| g.arrow_index(a, b).expect("arrow");
    for (i, &(x, y)) in g.arrows().iter().enumerate() {
        m[(i, i)] += Rational::from_integer(deg[x].into());
        for &z in g.out_neighbors(y) {
            m[(i, idx(y, z))] -= Rational::from_integer(2.into());
        }
        for &z in g.out_neighbors(x) {
            m[(i, idx(x, z))] += Rational::one();
        }
    }
    Ok(EdgeLaplacianMatrix {
        matrix: m,
        graph: g.clone(),
        provenance: Provenance::Canonical,
    })
}

fn require_edge_hypotheses(conn: &ConnectionData, met: &Metric) -> Result<()> {
    if conn.graph() != met.graph() {
        return Err(Error::Dimension("connection and metric live on different graphs".into()));
    }
    if !conn.alpha_is_zero() {
        return Err(Error::Precondition("edge Laplacian formula needs alpha = 0".into()));
    }
    if !pairing_is_sigma_invariant(conn, met) {
        return Err(Error::Precondition("metric pairing is not sigma-invariant".into()));
    }
    Ok(())
}

/// Edge Laplacian of `(σ, 0)` and a metric with `(,)σ = (,)`, from the
/// three-term index formula.
pub fn edge_laplacian_general(conn: &ConnectionData, met: &Metric) -> Result<EdgeLaplacianMatrix> {
    require_edge_hypotheses(conn, met)?;
    let g = conn.graph();
    let e = g.n_arrows();
    let idx = |a: usize, b: usize| g.arrow_index(a, b).expect("arrow");
    let mut m = RatMatrix::zeros(e, e);
    let two = Rational::from_integer(2.into());
    for (i, &(x, y)) in g.arrows().iter().enumerate() {
        let inflow: Rational = g.in_neighbors(x).iter().map(|&z| met.weight(z, x).clone()).sum();
        m[(i, i)] += inflow;
        for &z in g.out_neighbors(y) {
            for (w, c) in conn.sigma_image(&[x, y, z]) {
                m[(i, idx(*w, z))] -= &two * met.weight(x, *w) * c;
                for &s in g.out_neighbors(z) {
                    let c2 = conn.sigma_coeff(*w, z, s, x);
                    if !c2.is_zero() {
                        m[(i, idx(x, s))] += met.weight(*w, x) * c * c2;
                    }
                }
            }
        }
    }
    Ok(EdgeLaplacianMatrix {
        matrix: m,
        graph: g.clone(),
        provenance: Provenance::General,
    })
}

/// `Δω = (θ,θ)ω − 2(,)₁₂σ₂₃(θ⊗ω⊗θ) + (,)₁₂σ₂₃σ₁₂(ω⊗θ⊗θ)`.
pub fn edge_laplacian_tensor_form(conn: &ConnectionData, met: &Metric, w: &OneForm) -> Result<OneForm> {
    require_edge_hypotheses(conn, met)?;
    let th = theta(conn.graph());
    let tt = met.pair(&tensor(&th, &th));
    let two = Rational::from_integer(2.into());
    let tw: Form<3> = tensor(&th, w);
    let twt: Tensor3 = tensor(&tw, &th);
    let wt: Form<3> = tensor(w, &th);
    let wtt: Tensor3 = tensor(&wt, &th);
    let middle: OneForm = met.contract(&conn.sigma_at(&twt, 1), 0);
    let last: OneForm = met.contract(&conn.sigma_at(&conn.sigma_at(&wtt, 0), 1), 0);
    Ok(w.left_act(&tt).sub(&middle.scale(&two)).add(&last))
}

/// `((,)⊗id)∇²ω` straight from the definition.
pub fn edge_laplacian_from_connection(conn: &ConnectionData, met: &Metric, w: &OneForm) -> Result<OneForm> {
    if conn.graph() != met.graph() {
        return Err(Error::Dimension("connection and metric live on different graphs".into()));
    }
    Ok(met.contract(&conn.nabla2(&conn.nabla(w)), 0))
}

/// Matrix of `((,)⊗id)∇²` in the row-as-input convention; no hypotheses.
pub fn edge_laplacian_from_connection_matrix(conn: &ConnectionData, met: &Metric) -> Result<RatMatrix> {
    let g = conn.graph();
    let keys = crate::calculus::arrow_keys(g);
    let rows = g
        .arrows()
        .iter()
        .map(|&(x, y)| Ok(edge_laplacian_from_connection(conn, met, &crate::calculus::arrow_form(x, y))?.coordinates(&keys)))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(RatMatrix::zeros(0, 0));
    }
    RatMatrix::from_rows(rows)
}

/// Applies a vertex matrix to a function.
pub fn apply_vertex_operator(m: &RatMatrix, f: &ScalarFunction) -> ScalarFunction {
    ScalarFunction::new(m.mul_vec(f.values()).expect("size matches vertex count"))
}
