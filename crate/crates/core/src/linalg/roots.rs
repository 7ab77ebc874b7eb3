//! Complex roots of rational polynomials.
//!
//! The polynomial is first split exactly into square-free factors, so every
//! factor handed to the floating-point iteration has simple roots and the
//! multiplicities come out of exact arithmetic. Each factor is then solved by
//! the Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::RatPolynomial;
use super::rational::to_f64;
use crate::error::{Error, Result};

/// Roots closer than this are reported as one root with summed multiplicity.
pub const DEFAULT_MERGE_RADIUS: f64 = 1e-6;

const MAX_ITERATIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

pub fn poly_roots(p: &RatPolynomial, tol: f64) -> Result<Vec<Root>> {
    poly_roots_with_merge(p, tol, DEFAULT_MERGE_RADIUS)
}

pub fn poly_roots_with_merge(p: &RatPolynomial, tol: f64, merge_radius: f64) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Err(Error::Precondition("constant polynomial has no roots".into()));
    }
    let mut roots = Vec::new();
    for (factor, mult) in p.square_free_decomposition()? {
        let coeffs = factor.coeffs();
        if coeffs.len() == 2 {
            // monic linear factor t + c0: exact root
            roots.push(Root {
                value: Complex64::new(-to_f64(&coeffs[0]), 0.0),
                multiplicity: mult,
            });
            continue;
        }
        for z in aberth(&factor.to_f64(), tol) {
            roots.push(Root {
                value: z,
                multiplicity: mult,
            });
        }
    }
    Ok(merge(roots, merge_radius))
}

/// Simultaneous Aberth–Ehrlich iteration on a polynomial given by `f64`
/// coefficients (lowest degree first, nonzero leading coefficient).
pub fn aberth(coeffs: &[f64], tol: f64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara bound on root moduli
    let radius = (1..=n)
        .map(|k| {
            let c = a[n - k].abs();
            if k == n {
                (c / 2.0).powf(1.0 / k as f64)
            } else {
                c.powf(1.0 / k as f64)
            }
        })
        .fold(0.0_f64, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let stop = tol.min(1e-14);
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dv) = horner(&a, z[k]);
            if pv.is_zero() {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < stop {
            break;
        }
    }
    // a few Newton steps on the simple roots
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dv) = horner(&a, *zk);
            if dv.is_zero() {
                break;
            }
            let step = pv / dv;
            if !step.is_finite() {
                break;
            }
            *zk -= step;
        }
    }
    z
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut d = Complex64::zero();
    for c in a.iter().rev() {
        d = d * z + p;
        p = p * z + c;
    }
    (p, d)
}

fn merge(mut roots: Vec<Root>, radius: f64) -> Vec<Root> {
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    let mut out: Vec<Root> = Vec::new();
    for r in roots {
        if let Some(prev) = out.iter_mut().find(|o| (o.value - r.value).norm() < radius) {
            let total = (prev.multiplicity + r.multiplicity) as f64;
            prev.value = (prev.value * prev.multiplicity as f64 + r.value * r.multiplicity as f64) / total;
            prev.multiplicity += r.multiplicity;
        } else {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    fn p(c: &[i64]) -> RatPolynomial {
        RatPolynomial::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn t_squared_minus_one() {
        let roots = poly_roots(&p(&[-1, 0, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((roots[1].value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn repeated_root() {
        let roots = poly_roots(&RatPolynomial::from_roots(&[rat(0), rat(6), rat(6)]), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 2);
        assert!((roots[1].value.re - 6.0).abs() < 1e-12);
    }

    #[test]
    fn complex_roots_of_cyclotomic() {
        // t^4 + t^3 + t^2 + t + 1: primitive 5th roots of unity
        let roots = poly_roots(&p(&[1, 1, 1, 1, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r.value.powu(5) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn irrational_roots_refined() {
        // t^3 - 2: real root 2^(1/3)
        let roots = poly_roots(&p(&[-2, 0, 0, 1]), 1e-12).unwrap();
        let real: Vec<_> = roots.iter().filter(|r| r.value.im.abs() < 1e-12).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].value.re - 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn zero_polynomial_errors() {
        assert_eq!(poly_roots(&RatPolynomial::zero(), 1e-9), Err(Error::ZeroPolynomial));
    }
}
