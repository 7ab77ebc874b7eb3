use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{edge_laplacian_canonical, vertex_laplacian};
use crate::error::{Error, Result};
use crate::graph::{named, Digraph};
use crate::linalg::rational::round_to_integer;
use crate::linalg::{format_rational, sym_eigensolve, RatMatrix, RatPolynomial, Rational, DEFAULT_MERGE_RADIUS};

/// Above this many arrows the exact geometric multiplicity check is skipped
/// and an undecided verdict is reported.
pub const EXACT_RANK_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumValue {
    pub value: f64,
    /// Set when the eigenvalue is a verified integer.
    pub exact: Option<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeFactor {
    pub degree: usize,
    pub exponent: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub charpoly_edge: RatPolynomial,
    #[serde(rename = "charpoly_2L")]
    pub charpoly_2l: RatPolynomial,
    pub degree_factors: Vec<DegreeFactor>,
    /// `charpoly_edge = charpoly_2L · Π (t − deg)^{deg−1}` exactly.
    pub product_matches: bool,
    /// The change of basis to `{H_x} ∪ {θ_x}` gives the block triangular form.
    pub block_triangular: bool,
}

/// Exact multiplicities at an eigenvalue shared by both parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalizabilityDefect {
    pub eigenvalue: usize,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n_vertices: usize,
    pub n_arrows: usize,
    pub vertex_part: Vec<SpectrumValue>,
    pub degree_part: Vec<SpectrumValue>,
    pub spectrum: Vec<SpectrumValue>,
    pub disjoint: bool,
    pub diagonalizable: Verdict,
    pub shared_eigenvalues: Vec<DiagonalizabilityDefect>,
    pub zero_modes: usize,
    pub positive: bool,
    pub certificate: Certificate,
}

impl SpectrumReport {
    /// Flattened eigenvalue list (with repeats), descending.
    pub fn values(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .spectrum
            .iter()
            .flat_map(|v| std::iter::repeat(v.value).take(v.multiplicity))
            .collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// `(value, multiplicity)` pairs for integer eigenvalues.
    pub fn exact_multiset(&self) -> Vec<(String, usize)> {
        self.spectrum
            .iter()
            .map(|v| (v.exact.clone().unwrap_or_else(|| format!("{:.9}", v.value)), v.multiplicity))
            .collect()
    }
}

fn int(k: usize) -> Rational {
    Rational::from_integer(k.into())
}

fn cluster(values: &[f64], radius: f64) -> Vec<Vec<f64>> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some(group) if (v - group[group.len() - 1]).abs() <= radius => group.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

fn vertex_part(two_l: &RatMatrix, cp: &RatPolynomial, tol: f64) -> Result<Vec<SpectrumValue>> {
    let values: Vec<f64> = sym_eigensolve(two_l, tol)?.into_iter().map(|p| p.value).collect();
    let mut out = Vec::new();
    for group in cluster(&values, DEFAULT_MERGE_RADIUS) {
        let mean = group.iter().sum::<f64>() / group.len() as f64;
        let exact = round_to_integer(mean)
            .filter(|k| (crate::linalg::rational::to_f64(k) - mean).abs() < DEFAULT_MERGE_RADIUS && cp.eval(k).is_zero());
        match exact {
            Some(k) => out.push(SpectrumValue {
                value: crate::linalg::rational::to_f64(&k),
                multiplicity: cp.root_multiplicity(&k),
                exact: Some(format_rational(&k)),
            }),
            None => out.push(SpectrumValue {
                value: mean,
                exact: None,
                multiplicity: group.len(),
            }),
        }
    }
    out.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(out)
}

fn merge_parts(a: &[SpectrumValue], b: &[SpectrumValue]) -> Vec<SpectrumValue> {
    let mut out: Vec<SpectrumValue> = a.to_vec();
    for v in b {
        match out.iter_mut().find(|u| u.exact.is_some() && u.exact == v.exact) {
            Some(u) => u.multiplicity += v.multiplicity,
            None => out.push(v.clone()),
        }
    }
    out.sort_by(|a, b| b.value.total_cmp(&a.value));
    out
}

/// `T = BℒB⁻¹` for the basis `H_x` (arrows out of `x` except the one to its
/// smallest neighbour) followed by `θ_x`, and whether `T` has the block
/// triangular shape with diagonal `deg(x)` on `H` and `2L` on the `θ` block.
pub fn block_triangular_form(g: &Digraph) -> Result<(RatMatrix, bool)> {
    let lap = edge_laplacian_canonical(g)?;
    let deg = g.undirected_degrees()?;
    let n = g.n_vertices();
    let e = g.n_arrows();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(e);
    let mut h_owner = Vec::new();
    for x in 0..n {
        for &y in g.out_neighbors(x).iter().skip(1) {
            let mut r = vec![Rational::zero(); e];
            r[g.arrow_index(x, y).expect("arrow")] = Rational::one();
            rows.push(r);
            h_owner.push(x);
        }
    }
    let nh = rows.len();
    for x in 0..n {
        let mut r = vec![Rational::zero(); e];
        for &y in g.out_neighbors(x) {
            r[g.arrow_index(x, y).expect("arrow")] = Rational::one();
        }
        rows.push(r);
    }
    let b = RatMatrix::from_rows(rows)?;
    let t = b.mul(&lap.matrix)?.mul(&b.inverse()?)?;
    let two_l = vertex_laplacian(g)?.scale(&int(2));
    let mut ok = true;
    for i in 0..e {
        for j in 0..e {
            let want = if i < nh && j < nh {
                if i == j {
                    Some(int(deg[h_owner[i]]))
                } else {
                    Some(Rational::zero())
                }
            } else if i >= nh && j < nh {
                Some(Rational::zero())
            } else if i >= nh {
                Some(two_l[(i - nh, j - nh)].clone())
            } else {
                None
            };
            if let Some(w) = want {
                if t[(i, j)] != w {
                    ok = false;
                }
            }
        }
    }
    Ok((t, ok))
}

/// Spectrum of the canonical edge Laplacian of a connected bidirected
/// graph, with the exact characteristic polynomial certificate.
pub fn theorem49_verify(g: &Digraph, tol: f64) -> Result<SpectrumReport> {
    if !g.is_bidirected() {
        return Err(Error::NotBidirected);
    }
    if g.n_vertices() < 2 {
        return Err(Error::InvalidGraph("need at least one edge".into()));
    }
    if !g.is_weakly_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n_vertices();
    let e = g.n_arrows();
    let deg = g.undirected_degrees()?;
    let lap = edge_laplacian_canonical(g)?;
    let two_l = vertex_laplacian(g)?.scale(&int(2));
    let cp_edge = lap.matrix.charpoly()?;
    let cp_2l = two_l.charpoly()?;

    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in &deg {
        *by_degree.entry(d).or_default() += d - 1;
    }
    let degree_factors: Vec<DegreeFactor> = by_degree
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|(&degree, &exponent)| DegreeFactor { degree, exponent })
        .collect();
    let mut product = cp_2l.clone();
    for f in &degree_factors {
        product = product.mul(&RatPolynomial::linear_root(&int(f.degree)).pow(f.exponent));
    }
    let (_, block_ok) = block_triangular_form(g)?;

    let vertex = vertex_part(&two_l, &cp_2l, tol)?;
    let degree_part: Vec<SpectrumValue> = degree_factors
        .iter()
        .rev()
        .map(|f| SpectrumValue {
            value: f.degree as f64,
            exact: Some(f.degree.to_string()),
            multiplicity: f.exponent,
        })
        .collect();
    let spectrum = merge_parts(&vertex, &degree_part);

    let shared: Vec<usize> = degree_factors
        .iter()
        .map(|f| f.degree)
        .filter(|&d| cp_2l.eval(&int(d)).is_zero())
        .collect();
    let disjoint = shared.is_empty();
    let mut shared_eigenvalues = Vec::new();
    let diagonalizable = if disjoint {
        Verdict::Yes
    } else if e > EXACT_RANK_LIMIT {
        Verdict::Unknown
    } else {
        for &d in &shared {
            let rank = lap.matrix.shift(&int(d))?.rank();
            shared_eigenvalues.push(DiagonalizabilityDefect {
                eigenvalue: d,
                algebraic: cp_edge.root_multiplicity(&int(d)),
                geometric: e - rank,
            });
        }
        // eigenvalues that are not shared are always semisimple in the
        // block triangular form, so the shared ones decide
        if shared_eigenvalues.iter().all(|s| s.geometric == s.algebraic) {
            Verdict::Yes
        } else {
            Verdict::No
        }
    };

    let zero_modes = e - lap.matrix.rank();
    let zero_in_2l = cp_2l.root_multiplicity(&Rational::zero());
    let vertex_positive = vertex
        .iter()
        .filter(|v| v.exact.as_deref() != Some("0"))
        .all(|v| v.value > tol);
    let positive = zero_modes == 1 && zero_in_2l == 1 && vertex_positive && deg.iter().all(|&d| d >= 1);

    Ok(SpectrumReport {
        n_vertices: n,
        n_arrows: e,
        vertex_part: vertex,
        degree_part,
        spectrum,
        disjoint,
        diagonalizable,
        shared_eigenvalues,
        zero_modes,
        positive,
        certificate: Certificate {
            product_matches: product == cp_edge,
            charpoly_edge: cp_edge,
            charpoly_2l: cp_2l,
            degree_factors,
            block_triangular: block_ok,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    /// Absent for an isolated vertex.
    pub report: Option<SpectrumReport>,
}

/// One report per weakly connected component.
pub fn spectrum_by_component(g: &Digraph, tol: f64) -> Result<Vec<ComponentReport>> {
    if !g.is_bidirected() {
        return Err(Error::NotBidirected);
    }
    g.components()
        .into_iter()
        .map(|vertices| {
            let report = if vertices.len() < 2 {
                None
            } else {
                Some(theorem49_verify(&g.induced(&vertices)?, tol)?)
            };
            Ok(ComponentReport { vertices, report })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MgonReport {
    pub m: usize,
    /// `8 sin²(πp/m)` for `p = 0..m`, descending.
    pub closed_form: Vec<f64>,
    /// Largest gap between the closed form and the computed vertex part.
    pub max_deviation: f64,
    pub report: SpectrumReport,
}

pub fn mgon_spectrum(m: usize, tol: f64) -> Result<MgonReport> {
    if m < 3 {
        return Err(Error::InvalidGraph(format!("an m-gon needs m >= 3, got {m}")));
    }
    let report = theorem49_verify(&named::cycle(m)?, tol)?;
    let mut closed_form: Vec<f64> = (0..m)
        .map(|p| {
            let s = (std::f64::consts::PI * p as f64 / m as f64).sin();
            8.0 * s * s
        })
        .collect();
    closed_form.sort_by(|a, b| b.total_cmp(a));
    let mut computed: Vec<f64> = report
        .vertex_part
        .iter()
        .flat_map(|v| std::iter::repeat(v.value).take(v.multiplicity))
        .collect();
    computed.sort_by(|a, b| b.total_cmp(a));
    let max_deviation = closed_form
        .iter()
        .zip(&computed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(MgonReport {
        m,
        closed_form,
        max_deviation,
        report,
    })
}
