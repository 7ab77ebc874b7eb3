//! Metrics, bimodule connections and their torsion, curvature, cotorsion
//! and Ricci tensor on a digraph calculus.

mod braid;
mod connection;
mod metric;
mod omega2;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::calculus::{arrow_form, d, tensor, theta, Form, OneForm, ScalarFunction, Tensor2, Tensor3};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

pub use braid::{braid_holds_on, braid_sides, check_braid, check_braid_indices, BraidReport, BraidViolation};
pub use connection::{parse_connection, ConnectionData, ConnectionSpec};
pub use metric::{metric_pairing, Metric};
pub use omega2::{TwoForm, TwoFormSpace};

/// Outcome of ∇𝔤 = 0.
#[derive(Debug, Clone, Serialize)]
pub struct MetricCompatReport {
    pub compatible: bool,
    /// ∇𝔤 itself.
    pub nabla_g: Tensor3,
    /// For α = 0: whether the quadratic equations on σ agree with ∇𝔤 = 0.
    pub quadratic_equations_hold: Option<bool>,
}

fn require_same_graph(conn: &ConnectionData, met: &Metric) -> Result<()> {
    if conn.graph() != met.graph() {
        return Err(Error::Dimension("connection and metric live on different graphs".into()));
    }
    Ok(())
}

/// `∇𝔤 = (∇⊗id)𝔤 + σ₁₂(id⊗∇)𝔤`.
pub fn nabla_metric(conn: &ConnectionData, met: &Metric) -> Tensor3 {
    conn.nabla2(&met.tensor())
}

/// For α = 0, the index form of ∇𝔤 = 0: for every 3-path `x→v→w→z` with
/// `x→z`, `δ_{v,z} − Σ_y σ^{y,x,z}_w σ^{x,y,w}_v g_{z→w}/g_{x→y} = 0`.
pub fn metric_quadratic_equations(conn: &ConnectionData, met: &Metric) -> Vec<([usize; 4], Rational)> {
    let g = conn.graph();
    let mut failures = Vec::new();
    for [x, v, w, z] in g.three_paths() {
        if !g.has_arrow(x, z) {
            continue;
        }
        let mut sum = Rational::zero();
        for &y in g.in_neighbors(x) {
            if !g.has_arrow(x, y) {
                continue;
            }
            let s = conn.sigma_coeff(y, x, z, w) * conn.sigma_coeff(x, y, w, v);
            if !s.is_zero() {
                sum += s * met.weight(z, w) / met.weight(x, y);
            }
        }
        let delta = if v == z { Rational::one() } else { Rational::zero() };
        let residual = delta - sum;
        if !residual.is_zero() {
            failures.push(([x, v, w, z], residual));
        }
    }
    failures
}

pub fn check_metric_compat(conn: &ConnectionData, met: &Metric) -> Result<MetricCompatReport> {
    require_same_graph(conn, met)?;
    let nabla_g = nabla_metric(conn, met);
    let quadratic_equations_hold = conn
        .alpha_is_zero()
        .then(|| metric_quadratic_equations(conn, met).is_empty());
    Ok(MetricCompatReport {
        compatible: nabla_g.is_zero(),
        nabla_g,
        quadratic_equations_hold,
    })
}

/// `T∇ω = −∧(id+σ)(ω⊗θ) + ∧αω`.
pub fn torsion(conn: &ConnectionData, space: &TwoFormSpace, w: &OneForm) -> TwoForm {
    let th = theta(conn.graph());
    let wt: Tensor2 = tensor(w, &th);
    let t = wt.add(&conn.sigma(&wt)).neg().add(&conn.alpha(w));
    space.wedge(&t)
}

/// `∧∇ω − dω` with `dω = θ∧ω + ω∧θ`.
pub fn torsion_from_definition(conn: &ConnectionData, space: &TwoFormSpace, w: &OneForm) -> TwoForm {
    space.wedge(&conn.nabla(w)).sub(&space.d1(conn, w))
}

/// Image of id+σ inside ker ∧, tested on every basis 2-path. Returns the
/// 2-paths where it fails.
pub fn torsion_compatibility_failures(conn: &ConnectionData, space: &TwoFormSpace) -> Vec<[usize; 3]> {
    conn.graph()
        .two_paths()
        .into_iter()
        .filter(|&k| {
            let mut t = Tensor2::zero();
            t.add_term(k, Rational::one());
            !space.wedge(&t.add(&conn.sigma(&t))).is_zero()
        })
        .collect()
}

pub fn check_torsion_compatible(conn: &ConnectionData, space: &TwoFormSpace) -> bool {
    torsion_compatibility_failures(conn, space).is_empty()
}

/// `R̃ω = −σ₂₃σ₁₂(ω⊗θ⊗θ) + (σ₂₃(α⊗id) + (id⊗α)σ)(ω⊗θ) − (id⊗α)αω`.
pub fn curvature_lift(conn: &ConnectionData, w: &OneForm) -> Tensor3 {
    let th = theta(conn.graph());
    let wt: Tensor2 = tensor(w, &th);
    let wtt: Tensor3 = tensor(&wt, &th);
    let mut r = conn.sigma_at(&conn.sigma_at(&wtt, 0), 1).neg();
    if !conn.alpha_is_zero() {
        let a_id: Tensor3 = conn.alpha_at(&wt, 0);
        r = r.add(&conn.sigma_at(&a_id, 1));
        let id_a: Tensor3 = conn.alpha_at(&conn.sigma(&wt), 1);
        r = r.add(&id_a);
        let aa: Tensor3 = conn.alpha_at(&conn.alpha(w), 1);
        r = r.sub(&aa);
    }
    r
}

/// `R∇ω = (∧⊗id) R̃ω`, an element of Ω²⊗Ω¹ stored reduced.
pub fn curvature(conn: &ConnectionData, space: &TwoFormSpace, w: &OneForm) -> Tensor3 {
    space.reduce_at(&curvature_lift(conn, w), 0)
}

/// `(d⊗id − (∧⊗id)(id⊗∇))` on Ω¹⊗Ω¹, valued in Ω²⊗Ω¹.
pub fn second_covariant_operator(conn: &ConnectionData, space: &TwoFormSpace, t: &Tensor2) -> Tensor3 {
    let raw = t.map_linear(|&[a, b, c]| {
        let wa = arrow_form(a, b);
        let wb = arrow_form(b, c);
        let dwa = {
            let th = theta(conn.graph());
            let l: Tensor2 = tensor(&th, &wa);
            let r: Tensor2 = tensor(&wa, &th);
            l.add(&r)
        };
        let first: Tensor3 = tensor(&dwa, &wb);
        let second: Tensor3 = tensor(&wa, &conn.nabla(&wb));
        first.sub(&second)
    });
    space.reduce_at(&raw, 0)
}

/// Curvature from its definition `(d⊗id − (∧⊗id)(id⊗∇))∇ω`.
pub fn curvature_from_definition(conn: &ConnectionData, space: &TwoFormSpace, w: &OneForm) -> Tensor3 {
    second_covariant_operator(conn, space, &conn.nabla(w))
}

/// `(d⊗id − (∧⊗id)(id⊗∇))𝔤`; zero means cotorsion free.
pub fn cotorsion(conn: &ConnectionData, space: &TwoFormSpace, met: &Metric) -> Result<Tensor3> {
    require_same_graph(conn, met)?;
    Ok(second_covariant_operator(conn, space, &met.tensor()))
}

/// Nonstandard Ricci `S = ( , )₁₂(id⊗R̃)𝔤`.
pub fn ricci(conn: &ConnectionData, met: &Metric) -> Result<Tensor2> {
    require_same_graph(conn, met)?;
    let mut lifted: Form<5> = Form::zero();
    for &(x, y) in conn.graph().arrows() {
        let first = arrow_form(x, y).scale(&met.weight(x, y).recip());
        let r = curvature_lift(conn, &arrow_form(y, x));
        lifted = lifted.add(&tensor(&first, &r));
    }
    Ok(met.contract(&lifted, 0))
}

/// `( , )S`.
pub fn ricci_scalar(conn: &ConnectionData, met: &Metric) -> Result<ScalarFunction> {
    Ok(met.pair(&ricci(conn, met)?))
}

/// For a permutation-type `(σ, 0)` with the Euclidean metric:
/// `S = −Σ ω_{y→σ_{y,w}(z)} ⊗ ω_{σ_{y,w}(z)→w}` over `x→y→z→w` with
/// `y` fixed by `σ_{x,z}`.
pub fn ricci_permutation_formula(conn: &ConnectionData) -> Result<Tensor2> {
    if !conn.alpha_is_zero() {
        return Err(Error::Precondition("closed form needs alpha = 0".into()));
    }
    let perm = conn
        .permutation()
        .ok_or_else(|| Error::Precondition("connection is not of permutation type".into()))?;
    let mut out = Tensor2::zero();
    for [x, y, z, w] in conn.graph().three_paths() {
        if perm[&[x, y, z]] != y {
            continue;
        }
        let u = perm[&[y, z, w]];
        out.add_term([y, u, w], -Rational::one());
    }
    Ok(out)
}

/// `(,)σ = (,)` on every basis 2-path.
pub fn pairing_is_sigma_invariant(conn: &ConnectionData, met: &Metric) -> bool {
    conn.graph().two_paths().into_iter().all(|k| {
        let mut t = Tensor2::zero();
        t.add_term(k, Rational::one());
        met.pair(&conn.sigma(&t)) == met.pair(&t)
    })
}

/// The index form of `(,)σ = (,)`: `Σ_w g_{w→x} σ^{x,y,x}_w = g_{y→x}`.
pub fn pairing_invariance_by_weights(conn: &ConnectionData, met: &Metric) -> bool {
    let g = conn.graph();
    g.arrows().iter().all(|&(x, y)| {
        let lhs: Rational = g
            .out_neighbors(x)
            .iter()
            .map(|&w| met.weight(w, x) * conn.sigma_coeff(x, y, x, w))
            .sum();
        &lhs == met.weight(y, x)
    })
}

/// Permutation-type form: `g_{σ_{x,x}(y)→x} = g_{y→x}` for all `y→x`.
pub fn pairing_invariance_by_permutation(conn: &ConnectionData, met: &Metric) -> Option<bool> {
    let perm = conn.permutation()?;
    let g = conn.graph();
    Some(g.arrows().iter().all(|&(x, y)| met.weight(perm[&[x, y, x]], x) == met.weight(y, x)))
}

/// First cohomology `H¹ = ker d₁ / im d₀` and `H⁰ = ker d₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeRham {
    pub h0: usize,
    pub h1: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
}

pub fn derham(conn: &ConnectionData, space: &TwoFormSpace) -> DeRham {
    let g = conn.graph();
    let rank_d0 = crate::calculus::d_matrix(g).rank();
    let paths = g.two_paths();
    let cols: Vec<Vec<Rational>> = g
        .arrows()
        .iter()
        .map(|&(x, y)| space.d1(conn, &arrow_form(x, y)).coordinates(&paths))
        .collect();
    let rank_d1 = if cols.is_empty() || paths.is_empty() {
        0
    } else {
        RatMatrix::from_rows(cols).map(|m| m.rank()).unwrap_or(0)
    };
    DeRham {
        h0: g.n_vertices() - rank_d0,
        h1: g.n_arrows() - rank_d1 - rank_d0,
        rank_d0,
        rank_d1,
    }
}

pub fn derham_h1(conn: &ConnectionData, space: &TwoFormSpace) -> usize {
    derham(conn, space).h1
}

/// `Δf = ( , )∇df`.
pub fn laplace_beltrami_0(conn: &ConnectionData, met: &Metric, f: &ScalarFunction) -> Result<ScalarFunction> {
    require_same_graph(conn, met)?;
    Ok(met.pair(&conn.nabla(&d(conn.graph(), f))))
}
