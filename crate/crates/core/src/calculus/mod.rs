//! The first-order calculus Ω¹ of a digraph: functions, forms, d, θ and
//! pushforward along morphisms.

pub mod extended;
mod forms;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{check_morphism, Digraph, GraphMorphism};
use crate::linalg::{RatMatrix, Rational};

pub use forms::{form_from_json, tensor, Form, OneForm, ScalarFunction, Tensor2, Tensor3};

/// `df = Σ (f(y) − f(x)) ω_{x→y}`.
pub fn d(g: &Digraph, f: &ScalarFunction) -> OneForm {
    let mut out = OneForm::zero();
    for &(x, y) in g.arrows() {
        out.add_term([x, y], f.at(y) - f.at(x));
    }
    out
}

/// The inner form: sum of all arrow basis forms.
pub fn theta(g: &Digraph) -> OneForm {
    let mut out = OneForm::zero();
    for &(x, y) in g.arrows() {
        out.add_term([x, y], Rational::one());
    }
    out
}

/// `δ_x θ`: the arrows leaving `x`.
pub fn theta_at(g: &Digraph, x: usize) -> OneForm {
    let mut out = OneForm::zero();
    for &y in g.out_neighbors(x) {
        out.add_term([x, y], Rational::one());
    }
    out
}

pub fn arrow_form(x: usize, y: usize) -> OneForm {
    let mut out = OneForm::zero();
    out.add_term([x, y], Rational::one());
    out
}

/// `ω f − f ω`.
pub fn commutator(omega: &OneForm, f: &ScalarFunction) -> OneForm {
    omega.right_act(f).sub(&omega.left_act(f))
}

/// Basis keys of Ω¹, Ω¹⊗Ω¹ and Ω¹⊗Ω¹⊗Ω¹ in canonical order.
pub fn arrow_keys(g: &Digraph) -> Vec<[usize; 2]> {
    g.arrows().iter().map(|&(x, y)| [x, y]).collect()
}

/// Matrix of d: rows are arrows, columns vertices.
pub fn d_matrix(g: &Digraph) -> RatMatrix {
    let mut m = RatMatrix::zeros(g.n_arrows(), g.n_vertices());
    for (i, &(x, y)) in g.arrows().iter().enumerate() {
        m[(i, y)] += Rational::one();
        m[(i, x)] -= Rational::one();
    }
    m
}

/// Dimension of the space of functions with `df = 0`.
pub fn ker_d_dimension(g: &Digraph) -> usize {
    g.n_vertices() - d_matrix(g).rank()
}

/// Rank of the span of `{δ_x dδ_y}` inside Ω¹; equals the arrow count
/// exactly when `f ⊗ g ↦ f dg` is onto.
pub fn surjectivity_rank(g: &Digraph) -> usize {
    let n = g.n_vertices();
    let keys = arrow_keys(g);
    let mut rows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = d(g, &ScalarFunction::delta(n, y)).left_act(&ScalarFunction::delta(n, x));
            rows.push(v.coordinates(&keys));
        }
    }
    if keys.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

/// `φ_*(ω_{x→y}) = Σ ω_{w→z}` over domain arrows with `ψ(w)=x, ψ(z)=y`.
/// Maps forms on the codomain to forms on the domain.
pub fn pushforward(m: &GraphMorphism, omega: &OneForm) -> Result<OneForm> {
    if !check_morphism(m) {
        return Err(Error::InvalidMorphism("morphism condition fails".into()));
    }
    let mut out = OneForm::zero();
    for &(w, z) in m.domain.arrows() {
        let c = omega.get(&[m.psi[w], m.psi[z]]);
        if !c.is_zero() {
            out.add_term([w, z], c);
        }
    }
    Ok(out)
}
