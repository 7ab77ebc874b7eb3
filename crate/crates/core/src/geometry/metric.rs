use num_traits::{One, Zero};

use crate::calculus::{form_from_json, Form, OneForm, ScalarFunction, Tensor2};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::Rational;

/// Nonzero weight `g_{x→y}` on every arrow of a bidirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    graph: Digraph,
    weights: Vec<Rational>,
}

impl Metric {
    /// Weights indexed like `g.arrows()`.
    pub fn new(g: &Digraph, weights: Vec<Rational>) -> Result<Self> {
        if !g.is_bidirected() {
            return Err(Error::NotBidirected);
        }
        if weights.len() != g.n_arrows() {
            return Err(Error::InvalidMetric(format!(
                "{} weights for {} arrows",
                weights.len(),
                g.n_arrows()
            )));
        }
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            let (x, y) = g.arrows()[i];
            return Err(Error::InvalidMetric(format!("zero weight on {x} -> {y}")));
        }
        Ok(Self {
            graph: g.clone(),
            weights,
        })
    }

    /// All weights 1.
    pub fn euclidean(g: &Digraph) -> Result<Self> {
        Self::new(g, vec![Rational::one(); g.n_arrows()])
    }

    /// Weights from a function of the arrow.
    pub fn from_fn(g: &Digraph, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        Self::new(g, g.arrows().iter().map(|&(x, y)| f(x, y)).collect())
    }

    /// JSON `{"weights": [[x, y, "p/q"], ...]}`; every arrow must appear.
    pub fn from_json(g: &Digraph, text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: Some(e.line()),
            message: e.to_string(),
        })?;
        let weights = value.get("weights").ok_or_else(|| Error::Parse {
            line: None,
            message: "metric file needs a \"weights\" array".into(),
        })?;
        let form: OneForm = form_from_json(g, weights)?;
        Self::new(g, g.arrows().iter().map(|&(x, y)| form.get(&[x, y])).collect())
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_euclidean(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }

    /// `g_{x→y}`; panics if `x → y` is not an arrow.
    pub fn weight(&self, x: usize, y: usize) -> &Rational {
        let i = self
            .graph
            .arrow_index(x, y)
            .unwrap_or_else(|| panic!("{x} -> {y} is not an arrow"));
        &self.weights[i]
    }

    /// `𝔤 = Σ (1/g_{x→y}) ω_{x→y} ⊗ ω_{y→x}`.
    pub fn tensor(&self) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (&(x, y), w) in self.graph.arrows().iter().zip(&self.weights) {
            out.add_term([x, y, x], w.recip());
        }
        out
    }

    /// Contracts the two arrows at positions `pos, pos+1` of each key with
    /// `(ω_{a→b}, ω_{b→a}) = g_{b→a} δ_a`. `R` must be `N - 2`.
    pub fn contract<const N: usize, const R: usize>(&self, t: &Form<N>, pos: usize) -> Form<R> {
        assert_eq!(R + 2, N, "contraction arity mismatch");
        let mut out = Form::zero();
        for (k, c) in t.terms() {
            let (a, b, c2) = (k[pos], k[pos + 1], k[pos + 2]);
            if c2 != a {
                continue;
            }
            let mut key = [0usize; R];
            key[..=pos].copy_from_slice(&k[..=pos]);
            key[pos + 1..].copy_from_slice(&k[pos + 3..]);
            out.add_term(key, c * self.weight(b, a));
        }
        out
    }

    /// `( , )` on Ω¹⊗Ω¹ with values in functions.
    pub fn pair(&self, t: &Tensor2) -> ScalarFunction {
        let f: Form<1> = self.contract(t, 0);
        let mut out = ScalarFunction::zeros(self.graph.n_vertices());
        for (k, c) in f.terms() {
            out.set(k[0], c.clone());
        }
        out
    }
}

/// `(ω1, ω2)` as a function.
pub fn metric_pairing(met: &Metric, w1: &OneForm, w2: &OneForm) -> ScalarFunction {
    met.pair(&crate::calculus::tensor(w1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{arrow_form, tensor, theta};
    use crate::graph::named::{cycle, star};
    use crate::linalg::{rat, ratio};

    #[test]
    fn euclidean_pairing_rules() {
        let g = cycle(4).unwrap();
        let met = Metric::euclidean(&g).unwrap();
        let p = metric_pairing(&met, &arrow_form(0, 1), &arrow_form(1, 0));
        assert_eq!(p, ScalarFunction::delta(4, 0));
        assert!(metric_pairing(&met, &arrow_form(0, 1), &arrow_form(0, 1)).is_zero());
    }

    #[test]
    fn theta_pairs_to_degree() {
        let g = star(3).unwrap();
        let met = Metric::euclidean(&g).unwrap();
        assert_eq!(metric_pairing(&met, &theta(&g), &theta(&g)), ScalarFunction::from_i64(&[3, 1, 1, 1]));
    }

    #[test]
    fn inverse_metric_law() {
        let g = cycle(5).unwrap();
        let met = Metric::from_fn(&g, |x, y| ratio((x + 2 * y + 1) as i64, 3)).unwrap();
        let gt = met.tensor();
        for &(x, y) in g.arrows() {
            let w = arrow_form(x, y);
            // (id ⊗ ( , ω)) 𝔤
            let t3: Form<4> = tensor(&gt, &w);
            let left: Form<2> = met.contract(&t3, 1);
            assert_eq!(left, w);
            // ((ω, ) ⊗ id) 𝔤
            let t3b: Form<4> = tensor(&w, &gt);
            let right: Form<2> = met.contract(&t3b, 0);
            assert_eq!(right, w);
        }
    }

    #[test]
    fn rejects_zero_and_directed() {
        let g = cycle(3).unwrap();
        assert!(Metric::new(&g, vec![rat(0); 6]).is_err());
        let arrow = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(Metric::euclidean(&arrow), Err(Error::NotBidirected));
    }

    #[test]
    fn json_metric() {
        let g = Digraph::from_edges(2, [(0, 1)]).unwrap();
        let met = Metric::from_json(&g, r#"{"weights": [[0, 1, "2"], [1, 0, "1/3"]]}"#).unwrap();
        assert_eq!(met.weight(1, 0), &ratio(1, 3));
        assert!(Metric::from_json(&g, r#"{"weights": [[0, 1, "2"]]}"#).is_err());
    }
}
