use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::calculus::{tensor, theta, Form, OneForm, Tensor2, Tensor3};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{format_rational, parse_rational, Rational};

/// Bimodule connection data on a digraph: the braiding σ sends
/// `[x, y, z]` to `Σ_w σ^{x,y,z}_w [x, w, z]`, and α sends `[x, y]` to
/// `Σ_w α^{x,y}_w [x, w, y]`. Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionData {
    graph: Digraph,
    sigma: BTreeMap<[usize; 3], Vec<(usize, Rational)>>,
    alpha: BTreeMap<[usize; 2], Vec<(usize, Rational)>>,
}

/// A connection file: explicit data or a name resolved by the caller.
#[derive(Debug, Clone, PartialEq)]
pub enum ConnectionSpec {
    Named(String),
    Explicit(ConnectionData),
}

impl ConnectionData {
    /// Validates index ranges: `x→y→z`, `x→w→z` for σ and `x→y`, `x→w→y`
    /// for α. Repeated entries are summed.
    pub fn new(
        g: &Digraph,
        sigma: impl IntoIterator<Item = ([usize; 4], Rational)>,
        alpha: impl IntoIterator<Item = ([usize; 3], Rational)>,
    ) -> Result<Self> {
        let mut s: BTreeMap<[usize; 3], BTreeMap<usize, Rational>> = BTreeMap::new();
        for ([x, y, z, w], c) in sigma {
            if !g.is_path(&[x, y, z]) || !g.is_path(&[x, w, z]) {
                return Err(Error::InvalidConnection(format!(
                    "sigma entry ({x},{y},{z};{w}) needs arrows {x}->{y}->{z} and {x}->{w}->{z}"
                )));
            }
            *s.entry([x, y, z]).or_default().entry(w).or_insert_with(Rational::zero) += c;
        }
        let mut a: BTreeMap<[usize; 2], BTreeMap<usize, Rational>> = BTreeMap::new();
        for ([x, y, w], c) in alpha {
            if !g.has_arrow(x, y) || !g.is_path(&[x, w, y]) {
                return Err(Error::InvalidConnection(format!(
                    "alpha entry ({x},{y};{w}) needs arrows {x}->{y} and {x}->{w}->{y}"
                )));
            }
            *a.entry([x, y]).or_default().entry(w).or_insert_with(Rational::zero) += c;
        }
        let clean = |m: BTreeMap<usize, Rational>| -> Vec<(usize, Rational)> {
            m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        Ok(Self {
            graph: g.clone(),
            sigma: s
                .into_iter()
                .map(|(k, m)| (k, clean(m)))
                .filter(|(_, v)| !v.is_empty())
                .collect(),
            alpha: a
                .into_iter()
                .map(|(k, m)| (k, clean(m)))
                .filter(|(_, v)| !v.is_empty())
                .collect(),
        })
    }

    /// σ = id, α = 0.
    pub fn canonical(g: &Digraph) -> Self {
        Self {
            graph: g.clone(),
            sigma: g
                .two_paths()
                .into_iter()
                .map(|[x, y, z]| ([x, y, z], vec![(y, Rational::one())]))
                .collect(),
            alpha: BTreeMap::new(),
        }
    }

    /// Permutation-type σ from a reroute rule `[x, y, z] ↦ w`, α = 0.
    pub fn from_reroute(g: &Digraph, mut reroute: impl FnMut([usize; 3]) -> usize) -> Result<Self> {
        let entries: Vec<_> = g
            .two_paths()
            .into_iter()
            .map(|[x, y, z]| ([x, y, z, reroute([x, y, z])], Rational::one()))
            .collect();
        Self::new(g, entries, [])
    }

    /// Same σ with replaced α.
    pub fn with_alpha(&self, alpha: impl IntoIterator<Item = ([usize; 3], Rational)>) -> Result<Self> {
        let sigma = self.sigma_entries();
        Self::new(&self.graph, sigma, alpha)
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn sigma_entries(&self) -> Vec<([usize; 4], Rational)> {
        self.sigma
            .iter()
            .flat_map(|(&[x, y, z], v)| v.iter().map(move |(w, c)| ([x, y, z, *w], c.clone())))
            .collect()
    }

    pub fn alpha_entries(&self) -> Vec<([usize; 3], Rational)> {
        self.alpha
            .iter()
            .flat_map(|(&[x, y], v)| v.iter().map(move |(w, c)| ([x, y, *w], c.clone())))
            .collect()
    }

    /// `σ^{x,y,z}_w`.
    pub fn sigma_coeff(&self, x: usize, y: usize, z: usize, w: usize) -> Rational {
        self.sigma
            .get(&[x, y, z])
            .and_then(|v| v.iter().find(|(u, _)| *u == w))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn sigma_image(&self, key: &[usize; 3]) -> &[(usize, Rational)] {
        self.sigma.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Middle vertices of 2-paths grouped by endpoints `(x, z)`.
    pub fn blocks(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for [x, y, z] in self.graph.two_paths() {
            out.entry((x, z)).or_default().push(y);
        }
        out
    }

    /// For permutation type: `σ_{x,z}(y)` keyed by `[x, y, z]`.
    pub fn permutation(&self) -> Option<BTreeMap<[usize; 3], usize>> {
        let mut out = BTreeMap::new();
        for ((x, z), mids) in self.blocks() {
            let mut hit = vec![false; mids.len()];
            for &y in &mids {
                let image = self.sigma_image(&[x, y, z]);
                if image.len() != 1 || !image[0].1.is_one() {
                    return None;
                }
                let w = image[0].0;
                let pos = mids.iter().position(|&m| m == w)?;
                if hit[pos] {
                    return None;
                }
                hit[pos] = true;
                out.insert([x, y, z], w);
            }
        }
        Some(out)
    }

    pub fn is_permutation_type(&self) -> bool {
        self.permutation().is_some()
    }

    /// σ acting on the three vertices at `pos..pos+3` of every key.
    pub fn sigma_at<const N: usize>(&self, t: &Form<N>, pos: usize) -> Form<N> {
        t.map_linear(|k| {
            let mut out = Form::zero();
            for (w, c) in self.sigma_image(&[k[pos], k[pos + 1], k[pos + 2]]) {
                let mut key = *k;
                key[pos + 1] = *w;
                out.add_term(key, c.clone());
            }
            out
        })
    }

    pub fn sigma(&self, t: &Tensor2) -> Tensor2 {
        self.sigma_at(t, 0)
    }

    /// α acting on the arrow at `pos, pos+1`; `R` must be `N + 1`.
    pub fn alpha_at<const N: usize, const R: usize>(&self, t: &Form<N>, pos: usize) -> Form<R> {
        assert_eq!(R, N + 1, "alpha arity mismatch");
        t.map_linear(|k| {
            let mut out = Form::zero();
            if let Some(v) = self.alpha.get(&[k[pos], k[pos + 1]]) {
                for (w, c) in v {
                    let mut key = [0usize; R];
                    key[..=pos].copy_from_slice(&k[..=pos]);
                    key[pos + 1] = *w;
                    key[pos + 2..].copy_from_slice(&k[pos + 1..]);
                    out.add_term(key, c.clone());
                }
            }
            out
        })
    }

    pub fn alpha(&self, w: &OneForm) -> Tensor2 {
        self.alpha_at(w, 0)
    }

    /// `∇ω = θ⊗ω − σ(ω⊗θ) + αω`.
    pub fn nabla(&self, w: &OneForm) -> Tensor2 {
        let th = theta(&self.graph);
        let left: Tensor2 = tensor(&th, w);
        let right: Tensor2 = tensor(w, &th);
        left.sub(&self.sigma(&right)).add(&self.alpha(w))
    }

    /// `∇(ω⊗η) = ∇ω⊗η + σ₁₂(ω⊗∇η)` on Ω¹⊗Ω¹.
    pub fn nabla2(&self, t: &Tensor2) -> Tensor3 {
        t.map_linear(|&[a, b, c]| {
            let wa = crate::calculus::arrow_form(a, b);
            let wb = crate::calculus::arrow_form(b, c);
            let first: Tensor3 = tensor(&self.nabla(&wa), &wb);
            let second: Tensor3 = tensor(&wa, &self.nabla(&wb));
            first.add(&self.sigma_at(&second, 0))
        })
    }

    /// True when σ∘σ is the identity on every 2-path.
    pub fn sigma_is_involution(&self) -> bool {
        self.graph.two_paths().into_iter().all(|k| {
            let mut t = Tensor2::zero();
            t.add_term(k, Rational::one());
            self.sigma(&self.sigma(&t)) == t
        })
    }

    /// `σ(θ⊗θ) = θ⊗θ`.
    pub fn preserves_theta_squared(&self) -> bool {
        let th = theta(&self.graph);
        let tt: Tensor2 = tensor(&th, &th);
        self.sigma(&tt) == tt
    }

    pub fn to_json(&self) -> Value {
        let sigma: Vec<Value> = self
            .sigma_entries()
            .into_iter()
            .map(|([x, y, z, w], c)| json!([x, y, z, w, format_rational(&c)]))
            .collect();
        let alpha: Vec<Value> = self
            .alpha_entries()
            .into_iter()
            .map(|([x, y, w], c)| json!([x, y, w, format_rational(&c)]))
            .collect();
        json!({ "sigma": sigma, "alpha": alpha })
    }
}

/// Reads a connection file: `{"named": "..."}` or explicit
/// `{"sigma": [[x,y,z,w,"p/q"],...], "alpha": [[x,y,w,"p/q"],...]}`.
pub fn parse_connection(g: &Digraph, text: &str) -> Result<ConnectionSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    if let Some(name) = value.get("named") {
        let name = name.as_str().ok_or_else(|| bad("\"named\" must be a string"))?;
        return Ok(ConnectionSpec::Named(name.to_string()));
    }
    let sigma = entries::<4>(value.get("sigma"))?;
    let alpha = entries::<3>(value.get("alpha"))?;
    Ok(ConnectionSpec::Explicit(ConnectionData::new(g, sigma, alpha)?))
}

fn bad(m: &str) -> Error {
    Error::Parse {
        line: None,
        message: m.to_string(),
    }
}

fn entries<const K: usize>(v: Option<&Value>) -> Result<Vec<([usize; K], Rational)>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| bad("connection entries must be an array"))?;
    arr.iter()
        .map(|e| {
            let e = e.as_array().filter(|e| e.len() == K + 1).ok_or_else(|| {
                bad(&format!("connection entry must have {} fields", K + 1))
            })?;
            let mut key = [0usize; K];
            for (slot, x) in key.iter_mut().zip(e) {
                *slot = x.as_u64().ok_or_else(|| bad("vertex must be a nonnegative integer"))? as usize;
            }
            let c = match &e[K] {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(bad("coefficient must be a string or integer")),
            };
            Ok((key, c))
        })
        .collect()
}
