use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{format_rational, parse_rational, Rational};

/// A function on the vertex set.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ScalarFunction {
    values: Vec<Rational>,
}

impl ScalarFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::new(vec![c; n])
    }

    /// Kronecker delta at `x`.
    pub fn delta(n: usize, x: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[x] = Rational::one();
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn set(&mut self, x: usize, v: Rational) {
        self.values[x] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.values.iter().map(|a| a * c).collect())
    }

    /// The function `x ↦ self(psi(x))`.
    pub fn pullback(&self, psi: &[usize]) -> Self {
        Self::new(psi.iter().map(|&v| self.values[v].clone()).collect())
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for ScalarFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }
}

/// Sparse element of the `N-1`-fold tensor power of Ω¹ over the vertex
/// algebra. Keys are vertex paths `[v0, .., v_{N-1}]` whose consecutive
/// entries are arrows; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form<const N: usize> {
    terms: BTreeMap<[usize; N], Rational>,
}

/// Ω¹: keys are arrows `[x, y]`.
pub type OneForm = Form<2>;
/// Ω¹⊗Ω¹: keys are 2-paths `[x, y, z]`.
pub type Tensor2 = Form<3>;
/// Ω¹⊗Ω¹⊗Ω¹: keys are 3-paths.
pub type Tensor3 = Form<4>;

impl<const N: usize> Form<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Single basis element; the key must be a path of `g`.
    pub fn basis(g: &Digraph, key: [usize; N]) -> Result<Self> {
        Self::from_terms(g, [(key, Rational::one())])
    }

    /// Sums the given terms after checking every key is a path of `g`.
    pub fn from_terms(g: &Digraph, terms: impl IntoIterator<Item = ([usize; N], Rational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (key, c) in terms {
            if key.iter().any(|&v| v >= g.n_vertices()) || !g.is_path(&key) {
                return Err(Error::Dimension(format!("{key:?} is not a composable path")));
            }
            out.add_term(key, c);
        }
        Ok(out)
    }

    /// Coefficient vector in `basis` order back to a form. Keys are trusted.
    pub fn from_coordinates(basis: &[[usize; N]], values: &[Rational]) -> Self {
        let mut out = Self::zero();
        for (key, c) in basis.iter().zip(values) {
            out.add_term(*key, c.clone());
        }
        out
    }

    /// Adds `c` to the coefficient of `key` without path validation; callers
    /// produce keys from existing paths.
    pub(crate) fn add_term(&mut self, key: [usize; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, key: &[usize; N]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; N], &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coordinates(&self, basis: &[[usize; N]]) -> Vec<Rational> {
        basis.iter().map(|k| self.get(k)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|_, c| -c.clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map_coefficients(|_, c| c * s)
    }

    /// `f·self`: scales each term by `f` at the first vertex.
    pub fn left_act(&self, f: &ScalarFunction) -> Self {
        self.map_coefficients(|k, c| c * f.at(k[0]))
    }

    /// `self·f`: scales each term by `f` at the last vertex.
    pub fn right_act(&self, f: &ScalarFunction) -> Self {
        self.map_coefficients(|k, c| c * f.at(k[N - 1]))
    }

    fn map_coefficients(&self, mut op: impl FnMut(&[usize; N], &Rational) -> Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, op(k, c));
        }
        out
    }

    /// Applies a linear map given on basis keys and extends linearly.
    pub fn map_linear<const M: usize>(&self, mut op: impl FnMut(&[usize; N]) -> Form<M>) -> Form<M> {
        let mut out = Form::zero();
        for (k, c) in &self.terms {
            for (k2, c2) in op(k).terms {
                out.add_term(k2, c * c2);
            }
        }
        out
    }
}

/// Tensor product over the vertex algebra: only terms whose last and first
/// vertices agree survive. `R` must equal `N + M - 1`.
pub fn tensor<const N: usize, const M: usize, const R: usize>(a: &Form<N>, b: &Form<M>) -> Form<R> {
    assert_eq!(R, N + M - 1, "tensor arity mismatch");
    let mut out = Form::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            if ka[N - 1] != kb[0] {
                continue;
            }
            let mut key = [0usize; R];
            key[..N].copy_from_slice(ka);
            key[N..].copy_from_slice(&kb[1..]);
            out.add_term(key, ca * cb);
        }
    }
    out
}

impl<const N: usize> fmt::Debug for Form<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let path: Vec<String> = k.iter().map(ToString::to_string).collect();
                format!("{}·[{}]", format_rational(c), path.join(">"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serialized as an array of `[v0, .., v_{N-1}, "p/q"]` entries.
impl<const N: usize> Serialize for Form<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            let mut entry: Vec<serde_json::Value> = k.iter().map(|&v| serde_json::Value::from(v)).collect();
            entry.push(serde_json::Value::from(format_rational(c)));
            seq.serialize_element(&entry)?;
        }
        seq.end()
    }
}

/// Parses the serialized form back, validating paths against `g`.
pub fn form_from_json<const N: usize>(g: &Digraph, value: &serde_json::Value) -> Result<Form<N>> {
    let bad = |m: &str| Error::Parse {
        line: None,
        message: m.to_string(),
    };
    let entries = value.as_array().ok_or_else(|| bad("form must be a JSON array"))?;
    let mut terms = Vec::new();
    for e in entries {
        let arr = e.as_array().ok_or_else(|| bad("form entry must be an array"))?;
        if arr.len() != N + 1 {
            return Err(bad(&format!("form entry must have {} fields", N + 1)));
        }
        let mut key = [0usize; N];
        for (slot, v) in key.iter_mut().zip(arr) {
            *slot = v.as_u64().ok_or_else(|| bad("vertex must be a nonnegative integer"))? as usize;
        }
        let coeff = match &arr[N] {
            serde_json::Value::String(s) => parse_rational(s)?,
            serde_json::Value::Number(n) => parse_rational(&n.to_string())?,
            _ => return Err(bad("coefficient must be a string or integer")),
        };
        terms.push((key, coeff));
    }
    Form::from_terms(g, terms)
}
