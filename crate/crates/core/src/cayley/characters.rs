use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{CayleyGraph, FiniteGroup};
use crate::error::{Error, Result};
use crate::laplacian::edge_laplacian_canonical;
use crate::linalg::{rat, RatPolynomial, Rational};

/// A character `χ(g) = ζ_N^{k(g)}` with `N` the group exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    pub exponent: usize,
    pub k: Vec<usize>,
}

impl Character {
    pub fn value(&self, g: usize) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.k[g] as f64 / self.exponent as f64)
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().all(|&k| k == 0)
    }
}

fn exponent(group: &FiniteGroup) -> usize {
    (0..group.order()).fold(1, |acc, a| acc.lcm(&group.element_order(a)))
}

/// All characters of an abelian group, trivial first, sorted by exponent
/// vector.
pub fn characters(group: &FiniteGroup) -> Result<Vec<Character>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = group.order();
    let big_n = exponent(group);
    // greedy generators of maximal order
    let mut by_order: Vec<usize> = (0..n).collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(group.element_order(a)), a));
    let mut gens = Vec::new();
    let mut span = vec![group.identity()];
    for a in by_order {
        if span.len() == n {
            break;
        }
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = group.generated(&gens);
        }
    }
    let steps: Vec<usize> = gens.iter().map(|&g| big_n / group.element_order(g)).collect();
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; gens.len()];
    loop {
        let assign: Vec<usize> = digits.iter().zip(&steps).map(|(d, s)| d * s).collect();
        if let Some(k) = extend(group, &gens, &assign, big_n) {
            out.push(Character { exponent: big_n, k });
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    out.sort_by(|a, b| a.k.cmp(&b.k));
    if out.len() != n {
        return Err(Error::InvalidGroup(format!("found {} characters for order {n}", out.len())));
    }
    Ok(out)
}

fn extend(group: &FiniteGroup, gens: &[usize], assign: &[usize], big_n: usize) -> Option<Vec<usize>> {
    let n = group.order();
    let mut k = vec![usize::MAX; n];
    k[group.identity()] = 0;
    let mut queue = std::collections::VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &kg) in gens.iter().zip(assign) {
            let y = group.mul(x, g);
            let want = (k[x] + kg) % big_n;
            if k[y] == usize::MAX {
                k[y] = want;
                queue.push_back(y);
            } else if k[y] != want {
                return None;
            }
        }
    }
    Some(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateKind {
    /// `χθ`, eigenvalue `2Σ_a(1 − χ(a))`.
    Lifted,
    /// `χ Σ_a μ^a e_a` with `Σ_a (2χ(a⁻¹) − 1)μ^a = 0`, eigenvalue `|C|`.
    Generator,
}

fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub character: usize,
    #[serde(serialize_with = "complex_pair")]
    pub eigenvalue: Complex64,
    pub residual: f64,
    #[serde(skip)]
    pub vector: Vec<Complex64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CirculantReport {
    pub n_arrows: usize,
    pub candidates: Vec<Candidate>,
    pub max_residual: f64,
    pub residuals_ok: bool,
    /// Exact rank of the candidate family.
    pub exact_independent: usize,
    /// Characters `χ` with `2Σ_a χ(a) = |C|`, where the lifted candidate
    /// falls inside the span of the generator candidates.
    pub deficient_characters: Vec<usize>,
    pub numeric_rank: usize,
}

/// Candidate eigenvectors of the canonical edge Laplacian built from the
/// characters, with residuals measured against the exact matrix.
pub fn circulant_eigenvectors(cg: &CayleyGraph, tol: f64) -> Result<CirculantReport> {
    let group = cg.group();
    let chars = characters(group)?;
    let lap = edge_laplacian_canonical(cg.graph())?;
    let lap_f = lap.matrix.to_f64();
    let c = cg.generators().elements();
    let n = group.order();
    let e = cg.graph().n_arrows();
    let mut candidates = Vec::new();
    for (ci, chi) in chars.iter().enumerate() {
        let vals: Vec<Complex64> = (0..n).map(|x| chi.value(x)).collect();
        let lifted_value: Complex64 = c.iter().map(|&a| 2.0 * (Complex64::new(1.0, 0.0) - chi.value(a))).sum();
        let rows = vec![vals.clone(); c.len()];
        candidates.push(make_candidate(
            cg,
            &lap_f,
            CandidateKind::Lifted,
            ci,
            lifted_value,
            &rows,
        ));
        let u: Vec<Complex64> = c.iter().map(|&a| 2.0 * chi.value(group.inv(a)) - 1.0).collect();
        let size = Complex64::new(c.len() as f64, 0.0);
        for i in 1..c.len() {
            let mut rows = vec![vec![Complex64::zero(); n]; c.len()];
            rows[i] = vals.clone();
            rows[0] = vals.iter().map(|v| -v * u[i] / u[0]).collect();
            candidates.push(make_candidate(cg, &lap_f, CandidateKind::Generator, ci, size, &rows));
        }
    }
    let max_residual = candidates.iter().map(|c| c.residual).fold(0.0, f64::max);
    let deficient_characters: Vec<usize> = chars
        .iter()
        .enumerate()
        .filter(|(_, chi)| lifted_in_generator_span(chi, c))
        .map(|(i, _)| i)
        .collect();
    let vectors: Vec<Vec<Complex64>> = candidates.iter().map(|c| c.vector.clone()).collect();
    Ok(CirculantReport {
        n_arrows: e,
        max_residual,
        residuals_ok: max_residual <= tol,
        exact_independent: candidates.len() - deficient_characters.len(),
        deficient_characters,
        numeric_rank: complex_rank(vectors, 1e-8),
        candidates,
    })
}

fn make_candidate(
    cg: &CayleyGraph,
    lap: &[Vec<f64>],
    kind: CandidateKind,
    character: usize,
    eigenvalue: Complex64,
    rows: &[Vec<Complex64>],
) -> Candidate {
    let mut v = cg.combine(rows);
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        v.iter_mut().for_each(|z| *z /= scale);
    }
    // row i of the matrix is the image of arrow i
    let mut image = vec![Complex64::zero(); v.len()];
    for (i, vi) in v.iter().enumerate() {
        for (j, l) in lap[i].iter().enumerate() {
            if *l != 0.0 {
                image[j] += vi * l;
            }
        }
    }
    let residual = image
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - eigenvalue * b).norm())
        .fold(0.0, f64::max);
    Candidate {
        kind,
        character,
        eigenvalue,
        residual,
        vector: v,
    }
}

/// Decides `2Σ_a χ(a) = |C|` exactly by reducing `2Σ_a x^{k(a)} − |C|`
/// modulo the cyclotomic polynomial `Φ_N`.
fn lifted_in_generator_span(chi: &Character, c: &[usize]) -> bool {
    let big_n = chi.exponent;
    let mut coeffs = vec![Rational::zero(); big_n];
    for &a in c {
        coeffs[chi.k[a]] += rat(2);
    }
    coeffs[0] -= rat(c.len() as i64);
    let p = RatPolynomial::new(coeffs);
    let (_, r) = p.div_rem(&cyclotomic(big_n)).expect("nonzero divisor");
    r.is_zero()
}

/// `Φ_n` from `xⁿ − 1 = Π_{d | n} Φ_d`.
pub fn cyclotomic(n: usize) -> RatPolynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[0] = rat(-1);
    coeffs[n] = rat(1);
    let mut p = RatPolynomial::new(coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_rem(&cyclotomic(d)).expect("nonzero divisor").0;
    }
    p
}

fn complex_rank(mut rows: Vec<Vec<Complex64>>, rel_tol: f64) -> usize {
    let scale = rows
        .iter()
        .flat_map(|r| r.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm())) else {
            break;
        };
        if rows[p][col].norm() <= rel_tol * scale {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank][col];
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / pivot;
            if f != Complex64::zero() {
                for j in col..cols {
                    let sub = f * rows[rank][j];
                    rows[r][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}
