//! The λ-extended calculus `Ω̃¹ = Ω¹ ⊕ Aθ′` built from a second order
//! operator `(Δ, ⟨,⟩)`, and the extended connection on it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{d, tensor, theta, OneForm, ScalarFunction, Tensor2};
use crate::error::{Error, Result};
use crate::geometry::{ConnectionData, Metric};
use crate::graph::Digraph;
use crate::linalg::{ratio, RatMatrix, Rational};

/// Basis of Ω̃¹ over the ground field: arrows and `δ_x θ′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ExtBasis {
    Arrow(usize, usize),
    ThetaPrime(usize),
}

impl ExtBasis {
    /// The vertex `x` with `δ_x ∙ e = e`.
    pub fn source(&self) -> usize {
        match *self {
            ExtBasis::Arrow(a, _) | ExtBasis::ThetaPrime(a) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedOneForm {
    pub form_part: OneForm,
    pub theta_prime_part: ScalarFunction,
}

impl ExtendedOneForm {
    pub fn zero(n: usize) -> Self {
        Self {
            form_part: OneForm::zero(),
            theta_prime_part: ScalarFunction::zeros(n),
        }
    }

    pub fn from_form(w: &OneForm, n: usize) -> Self {
        Self {
            form_part: w.clone(),
            theta_prime_part: ScalarFunction::zeros(n),
        }
    }

    /// `h θ′`.
    pub fn theta_prime(h: &ScalarFunction) -> Self {
        Self {
            form_part: OneForm::zero(),
            theta_prime_part: h.clone(),
        }
    }

    pub fn basis(e: ExtBasis, n: usize) -> Self {
        match e {
            ExtBasis::Arrow(a, b) => Self::from_form(&super::arrow_form(a, b), n),
            ExtBasis::ThetaPrime(x) => Self::theta_prime(&ScalarFunction::delta(n, x)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            form_part: self.form_part.add(&o.form_part),
            theta_prime_part: self.theta_prime_part.add(&o.theta_prime_part),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            form_part: self.form_part.sub(&o.form_part),
            theta_prime_part: self.theta_prime_part.sub(&o.theta_prime_part),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            form_part: self.form_part.scale(c),
            theta_prime_part: self.theta_prime_part.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.form_part.is_zero() && self.theta_prime_part.is_zero()
    }

    /// `f ∙ u`, the unchanged left action.
    pub fn left_act(&self, f: &ScalarFunction) -> Self {
        Self {
            form_part: self.form_part.left_act(f),
            theta_prime_part: self.theta_prime_part.mul(f),
        }
    }

    pub fn terms(&self) -> Vec<(ExtBasis, Rational)> {
        let mut out: Vec<_> = self
            .form_part
            .terms()
            .map(|(k, c)| (ExtBasis::Arrow(k[0], k[1]), c.clone()))
            .collect();
        for (x, c) in self.theta_prime_part.values().iter().enumerate() {
            if !c.is_zero() {
                out.push((ExtBasis::ThetaPrime(x), c.clone()));
            }
        }
        out
    }
}

/// A bimodule map `⟨,⟩ : Ω¹⊗Ω¹ → A`, given by its value on each 2-path.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    n: usize,
    values: BTreeMap<[usize; 3], ScalarFunction>,
}

impl Bracket {
    pub fn zero(g: &Digraph) -> Self {
        Self {
            n: g.n_vertices(),
            values: BTreeMap::new(),
        }
    }

    /// Arbitrary values on 2-paths; use [`Bracket::is_bimodule_map`] to test.
    pub fn from_values(g: &Digraph, values: impl IntoIterator<Item = ([usize; 3], ScalarFunction)>) -> Self {
        Self {
            n: g.n_vertices(),
            values: values.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        }
    }

    /// The metric pairing `( , )`.
    pub fn from_pairing(met: &Metric) -> Self {
        let n = met.graph().n_vertices();
        let values = met
            .graph()
            .arrows()
            .iter()
            .map(|&(a, b)| ([a, b, a], ScalarFunction::delta(n, a).scale(met.weight(b, a))))
            .collect();
        Self { n, values }
    }

    /// `½((,) + (,)σ)`.
    pub fn symmetrized(conn: &ConnectionData, met: &Metric) -> Result<Self> {
        if conn.graph() != met.graph() {
            return Err(Error::Dimension("connection and metric live on different graphs".into()));
        }
        let half = ratio(1, 2);
        let values = conn
            .graph()
            .two_paths()
            .into_iter()
            .map(|k| {
                let mut t = Tensor2::zero();
                t.add_term(k, Rational::one());
                (k, met.pair(&t).add(&met.pair(&conn.sigma(&t))).scale(&half))
            })
            .filter(|(_, f)| !f.is_zero())
            .collect();
        Ok(Self {
            n: conn.graph().n_vertices(),
            values,
        })
    }

    pub fn value(&self, key: &[usize; 3]) -> ScalarFunction {
        self.values
            .get(key)
            .cloned()
            .unwrap_or_else(|| ScalarFunction::zeros(self.n))
    }

    pub fn apply(&self, t: &Tensor2) -> ScalarFunction {
        let mut out = ScalarFunction::zeros(self.n);
        for (k, c) in t.terms() {
            if let Some(v) = self.values.get(k) {
                out = out.add(&v.scale(c));
            }
        }
        out
    }

    /// A bimodule map sends `ω_{a→b}⊗ω_{b→c}` into `k δ_a ∩ k δ_c`.
    pub fn is_bimodule_map(&self) -> bool {
        self.values.iter().all(|(&[a, _, c], f)| {
            f.values()
                .iter()
                .enumerate()
                .all(|(x, v)| v.is_zero() || (x == a && x == c))
        })
    }

    /// `Δf = 2⟨θ, df⟩` as an n×n matrix acting on value vectors.
    pub fn inner_laplacian(&self, g: &Digraph) -> RatMatrix {
        let n = g.n_vertices();
        let th = theta(g);
        let cols: Vec<ScalarFunction> = (0..n)
            .map(|y| self.apply(&tensor(&th, &d(g, &ScalarFunction::delta(n, y)))).scale(&Rational::from_integer(2.into())))
            .collect();
        RatMatrix::from_fn(n, n, |x, y| cols[y].at(x).clone())
    }
}

fn apply_vertex_matrix(m: &RatMatrix, f: &ScalarFunction) -> ScalarFunction {
    ScalarFunction::new(m.mul_vec(f.values()).expect("matrix size matches vertex count"))
}

/// Matrix action on 1-forms with row `i` the image of the `i`-th arrow:
/// `Mω = Σ_i ω_i Σ_j M_{ij} ω_j`.
pub fn apply_arrow_matrix(g: &Digraph, m: &RatMatrix, w: &OneForm) -> OneForm {
    let mut out = OneForm::zero();
    for (k, c) in w.terms() {
        let i = g.arrow_index(k[0], k[1]).expect("form lives on the graph");
        for (j, &(x, y)) in g.arrows().iter().enumerate() {
            let e = &m[(i, j)];
            if !e.is_zero() {
                out.add_term([x, y], c * e);
            }
        }
    }
    out
}

/// `Δ(fg) = (Δf)g + fΔg + 2⟨df⊗dg⟩`, tested on all pairs of delta functions.
pub fn second_order_check(g: &Digraph, delta0: &RatMatrix, bracket: &Bracket) -> bool {
    let n = g.n_vertices();
    if delta0.rows() != n || delta0.cols() != n {
        return false;
    }
    let two = Rational::from_integer(2.into());
    let deltas: Vec<ScalarFunction> = (0..n).map(|x| ScalarFunction::delta(n, x)).collect();
    let lap: Vec<ScalarFunction> = deltas.iter().map(|f| apply_vertex_matrix(delta0, f)).collect();
    let ds: Vec<OneForm> = deltas.iter().map(|f| d(g, f)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = apply_vertex_matrix(delta0, &deltas[x].mul(&deltas[y]));
            let rhs = lap[x]
                .mul(&deltas[y])
                .add(&deltas[x].mul(&lap[y]))
                .add(&bracket.apply(&tensor(&ds[x], &ds[y])).scale(&two));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Element of `Ω̃¹ ⊗̃ Ω̃¹` (tensor product over A with the bullet actions),
/// stored in the normal form `Σ (u ∙ δ_{src v}) ⊗ v` over basis elements `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtTensor {
    terms: BTreeMap<(ExtBasis, ExtBasis), Rational>,
}

impl ExtTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    fn add_term(&mut self, k: (ExtBasis, ExtBasis), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ExtBasis, ExtBasis), &Rational)> {
        self.terms.iter()
    }

    pub fn get(&self, k: &(ExtBasis, ExtBasis)) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * s);
        }
        out
    }

    /// `f ∙ t`; the left action only sees the first factor.
    pub fn left_act(&self, f: &ScalarFunction) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * f.at(k.0.source()));
        }
        out
    }
}

impl Serialize for ExtTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((u, v), c) in &self.terms {
            seq.serialize_element(&(u, v, crate::linalg::format_rational(c)))?;
        }
        seq.end()
    }
}

/// The extended calculus for fixed `(Δ, ⟨,⟩, λ)`.
#[derive(Debug, Clone)]
pub struct ExtendedCalculus {
    graph: Digraph,
    lambda: Rational,
    delta0: RatMatrix,
    bracket: Bracket,
}

impl ExtendedCalculus {
    /// Checks that `⟨,⟩` is a bimodule map and that `Δ` is second order for it.
    pub fn new(g: &Digraph, delta0: RatMatrix, bracket: Bracket, lambda: Rational) -> Result<Self> {
        let n = g.n_vertices();
        if delta0.rows() != n || delta0.cols() != n {
            return Err(Error::Dimension(format!("Δ0 must be {n}×{n}")));
        }
        if !bracket.is_bimodule_map() {
            return Err(Error::Precondition("bracket is not a bimodule map".into()));
        }
        if !second_order_check(g, &delta0, &bracket) {
            return Err(Error::Precondition("Δ0 is not second order for the bracket".into()));
        }
        Ok(Self {
            graph: g.clone(),
            lambda,
            delta0,
            bracket,
        })
    }

    /// Uses `Δf = 2⟨θ, df⟩`.
    pub fn inner(g: &Digraph, bracket: Bracket, lambda: Rational) -> Result<Self> {
        let delta0 = bracket.inner_laplacian(g);
        Self::new(g, delta0, bracket, lambda)
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn bracket(&self) -> &Bracket {
        &self.bracket
    }

    pub fn delta0(&self) -> &RatMatrix {
        &self.delta0
    }

    fn n(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn laplacian(&self, f: &ScalarFunction) -> ScalarFunction {
        apply_vertex_matrix(&self.delta0, f)
    }

    /// `d̃f = df + (λ/2)(Δf)θ′`.
    pub fn d_tilde(&self, f: &ScalarFunction) -> ExtendedOneForm {
        ExtendedOneForm {
            form_part: d(&self.graph, f),
            theta_prime_part: self.laplacian(f).scale(&(&self.lambda * ratio(1, 2))),
        }
    }

    pub fn theta(&self) -> ExtendedOneForm {
        ExtendedOneForm::from_form(&theta(&self.graph), self.n())
    }

    /// `θ′ = Σ_x δ_x θ′`.
    pub fn theta_prime(&self) -> ExtendedOneForm {
        ExtendedOneForm::theta_prime(&ScalarFunction::constant(self.n(), Rational::one()))
    }

    /// `u ∙ f`: `ω∙f = ωf + λ⟨ω, df⟩θ′`, `θ′` central.
    pub fn right_act(&self, u: &ExtendedOneForm, f: &ScalarFunction) -> ExtendedOneForm {
        let corr = self.bracket.apply(&tensor(&u.form_part, &d(&self.graph, f)));
        ExtendedOneForm {
            form_part: u.form_part.right_act(f),
            theta_prime_part: u.theta_prime_part.mul(f).add(&corr.scale(&self.lambda)),
        }
    }

    pub fn left_act(&self, f: &ScalarFunction, u: &ExtendedOneForm) -> ExtendedOneForm {
        u.left_act(f)
    }

    /// `u ∙ f − f ∙ u`.
    pub fn commutator(&self, u: &ExtendedOneForm, f: &ScalarFunction) -> ExtendedOneForm {
        self.right_act(u, f).sub(&u.left_act(f))
    }

    fn normalize_into(&self, out: &mut ExtTensor, u: ExtBasis, v: ExtBasis, c: &Rational) {
        let proj = self.right_act(&ExtendedOneForm::basis(u, self.n()), &ScalarFunction::delta(self.n(), v.source()));
        for (e, k) in proj.terms() {
            out.add_term((e, v), c * k);
        }
    }

    /// `u ⊗̃ v`.
    pub fn tensor(&self, u: &ExtendedOneForm, v: &ExtendedOneForm) -> ExtTensor {
        let mut out = ExtTensor::zero();
        let vt = v.terms();
        for (eu, cu) in u.terms() {
            for (ev, cv) in &vt {
                self.normalize_into(&mut out, eu, *ev, &(&cu * cv));
            }
        }
        out
    }

    /// `t ∙ f`, acting on the second factor.
    pub fn tensor_right_act(&self, t: &ExtTensor, f: &ScalarFunction) -> ExtTensor {
        let mut out = ExtTensor::zero();
        for (&(eu, ev), c) in t.terms() {
            let vf = self.right_act(&ExtendedOneForm::basis(ev, self.n()), f);
            for (e, k) in vf.terms() {
                self.normalize_into(&mut out, eu, e, &(c * k));
            }
        }
        out
    }

    /// `∇_ω η = (⟨ω, ⟩ ⊗ id)∇η`.
    pub fn covariant_along(&self, conn: &ConnectionData, w: &OneForm, eta: &OneForm) -> OneForm {
        self.along(w, &conn.nabla(eta))
    }

    fn along(&self, w: &OneForm, nabla_eta: &Tensor2) -> OneForm {
        let t: super::Form<4> = tensor(w, nabla_eta);
        let mut out = OneForm::zero();
        for (&[a, b, q, r], c) in t.terms() {
            let h = self.bracket.value(&[a, b, q]);
            out.add_term([q, r], c * h.at(q));
        }
        out
    }

    /// `φ(ω⊗η) = ω⊗̃η − λθ′⊗̃∇_ωη`.
    pub fn phi(&self, conn: &ConnectionData, t: &Tensor2) -> ExtTensor {
        let n = self.n();
        let mut out = ExtTensor::zero();
        let mut cache: BTreeMap<[usize; 2], Tensor2> = BTreeMap::new();
        for (&[a, b, c], k) in t.terms() {
            self.normalize_into(&mut out, ExtBasis::Arrow(a, b), ExtBasis::Arrow(b, c), k);
            if self.lambda.is_zero() {
                continue;
            }
            let ne = cache
                .entry([b, c])
                .or_insert_with(|| conn.nabla(&super::arrow_form(b, c)))
                .clone();
            let dir = self.along(&super::arrow_form(a, b), &ne);
            let tp = self.tensor(&self.theta_prime(), &ExtendedOneForm::from_form(&dir, n));
            out = out.sub(&tp.scale(&(k * &self.lambda)));
        }
        out
    }

    /// Builds `∇̃` after checking `Δ₁(fω) = (Δf)ω + fΔ₁ω + 2∇_{df}ω`.
    pub fn extended_connection<'a>(
        &'a self,
        conn: &'a ConnectionData,
        delta1: RatMatrix,
        k: LeftModuleMap,
    ) -> Result<ExtendedConnection<'a>> {
        if conn.graph() != &self.graph {
            return Err(Error::Dimension("connection lives on a different graph".into()));
        }
        let e = self.graph.n_arrows();
        if delta1.rows() != e || delta1.cols() != e || k.matrix.rows() != e {
            return Err(Error::Dimension(format!("Δ1 and K must be {e}×{e}")));
        }
        if let Some((x, arrow)) = extension_law_failure(self, conn, &delta1) {
            return Err(Error::Precondition(format!(
                "Δ1 fails the extension law at f = δ_{x}, ω = ω_{}→{}",
                arrow.0, arrow.1
            )));
        }
        Ok(ExtendedConnection {
            calc: self,
            conn,
            delta1,
            k,
        })
    }
}

fn extension_law_failure(calc: &ExtendedCalculus, conn: &ConnectionData, delta1: &RatMatrix) -> Option<(usize, (usize, usize))> {
    let g = &calc.graph;
    let n = g.n_vertices();
    let two = Rational::from_integer(2.into());
    for &(a, b) in g.arrows() {
        let w = super::arrow_form(a, b);
        let lw = apply_arrow_matrix(g, delta1, &w);
        let nw = conn.nabla(&w);
        for x in 0..n {
            let f = ScalarFunction::delta(n, x);
            let lhs = apply_arrow_matrix(g, delta1, &w.left_act(&f));
            let rhs = w
                .left_act(&calc.laplacian(&f))
                .add(&lw.left_act(&f))
                .add(&calc.along(&d(g, &f), &nw).scale(&two));
            if lhs != rhs {
                return Some((x, (a, b)));
            }
        }
    }
    None
}

/// True when `Δ₁` obeys the extension law for `∇` and the calculus bracket.
pub fn extension_law_holds(calc: &ExtendedCalculus, conn: &ConnectionData, delta1: &RatMatrix) -> bool {
    extension_law_failure(calc, conn, delta1).is_none()
}

/// A left-module map `K : Ω¹ → Ω¹`, stored with row `i` the image of the
/// `i`-th arrow; the image of `ω_{a→b}` must only use arrows out of `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftModuleMap {
    matrix: RatMatrix,
}

impl LeftModuleMap {
    pub fn zero(g: &Digraph) -> Self {
        Self {
            matrix: RatMatrix::zeros(g.n_arrows(), g.n_arrows()),
        }
    }

    pub fn identity(g: &Digraph) -> Self {
        Self {
            matrix: RatMatrix::identity(g.n_arrows()),
        }
    }

    pub fn from_matrix(g: &Digraph, matrix: RatMatrix) -> Result<Self> {
        let e = g.n_arrows();
        if matrix.rows() != e || matrix.cols() != e {
            return Err(Error::Dimension(format!("K must be {e}×{e}")));
        }
        for (i, &(a, _)) in g.arrows().iter().enumerate() {
            for (j, &(s, _)) in g.arrows().iter().enumerate() {
                if s != a && !matrix[(i, j)].is_zero() {
                    return Err(Error::Precondition("K is not a left-module map".into()));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn apply(&self, g: &Digraph, w: &OneForm) -> OneForm {
        apply_arrow_matrix(g, &self.matrix, w)
    }
}

/// `∇̃ω = φ(∇ω) + (λ/2)θ′⊗̃(Δ−K)ω` on Ω¹, extended by `∇̃θ′ = 0`.
#[derive(Debug, Clone)]
pub struct ExtendedConnection<'a> {
    calc: &'a ExtendedCalculus,
    conn: &'a ConnectionData,
    delta1: RatMatrix,
    k: LeftModuleMap,
}

impl ExtendedConnection<'_> {
    pub fn apply(&self, u: &ExtendedOneForm) -> ExtTensor {
        let c = self.calc;
        let g = &c.graph;
        let n = g.n_vertices();
        let w = &u.form_part;
        let mut out = c.phi(self.conn, &self.conn.nabla(w));
        if !c.lambda.is_zero() {
            let dk = apply_arrow_matrix(g, &self.delta1, w).sub(&self.k.apply(g, w));
            let tp = c.tensor(&c.theta_prime(), &ExtendedOneForm::from_form(&dk, n));
            out = out.add(&tp.scale(&(&c.lambda * ratio(1, 2))));
        }
        if !u.theta_prime_part.is_zero() {
            out = out.add(&c.tensor(&c.d_tilde(&u.theta_prime_part), &c.theta_prime()));
        }
        out
    }

    /// `∇̃(f∙u) − d̃f⊗̃u − f∙∇̃u`.
    pub fn leibniz_defect(&self, f: &ScalarFunction, u: &ExtendedOneForm) -> ExtTensor {
        let c = self.calc;
        self.apply(&u.left_act(f))
            .sub(&c.tensor(&c.d_tilde(f), u))
            .sub(&self.apply(u).left_act(f))
    }

    /// Whether some linear σ̃ satisfies `∇̃(u∙f) = (∇̃u)∙f + σ̃(u⊗̃d̃f)` for
    /// all basis `u` and delta functions `f`: every linear relation among the
    /// inputs `u⊗̃d̃f` must also hold among the outputs.
    pub fn sigma_candidate_exists(&self) -> bool {
        let c = self.calc;
        let g = &c.graph;
        let n = g.n_vertices();
        let mut basis: Vec<ExtBasis> = g.arrows().iter().map(|&(a, b)| ExtBasis::Arrow(a, b)).collect();
        basis.extend((0..n).map(ExtBasis::ThetaPrime));
        let mut pairs = Vec::new();
        for &e in &basis {
            let u = ExtendedOneForm::basis(e, n);
            let nu = self.apply(&u);
            for x in 0..n {
                let f = ScalarFunction::delta(n, x);
                let input = c.tensor(&u, &c.d_tilde(&f));
                let output = self.apply(&c.right_act(&u, &f)).sub(&c.tensor_right_act(&nu, &f));
                pairs.push((input, output));
            }
        }
        let in_keys: Vec<_> = pairs
            .iter()
            .flat_map(|(i, _)| i.terms().map(|(k, _)| *k))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let out_keys: Vec<_> = pairs
            .iter()
            .flat_map(|(_, o)| o.terms().map(|(k, _)| *k))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if out_keys.is_empty() {
            return true;
        }
        let rows_in: Vec<Vec<Rational>> = pairs
            .iter()
            .map(|(i, _)| in_keys.iter().map(|k| i.get(k)).collect())
            .collect();
        let rows_both: Vec<Vec<Rational>> = pairs
            .iter()
            .zip(&rows_in)
            .map(|((_, o), r)| {
                let mut r = r.clone();
                r.extend(out_keys.iter().map(|k| o.get(k)));
                r
            })
            .collect();
        let rank_in = if in_keys.is_empty() {
            0
        } else {
            RatMatrix::from_rows(rows_in).map(|m| m.rank()).unwrap_or(0)
        };
        let rank_both = RatMatrix::from_rows(rows_both).map(|m| m.rank()).unwrap_or(0);
        rank_in == rank_both
    }
}
