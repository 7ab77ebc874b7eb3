//! Cyclic Jacobi eigensolver for symmetric matrices.

use super::matrix::RatMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric rational matrix, sorted by ascending eigenvalue.
///
/// Sweeps rotate every off-diagonal pair in row-cyclic order until the
/// off-diagonal Frobenius norm drops below `tol`.
pub fn sym_eigensolve(m: &RatMatrix, tol: f64) -> Result<Vec<EigenPair>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(jacobi_f64(m.to_f64(), tol))
}

pub fn jacobi_f64(mut a: Vec<Vec<f64>>, tol: f64) -> Vec<EigenPair> {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|i| EigenPair {
            value: a[i][i],
            vector: (0..n).map(|r| v[r][i]).collect(),
        })
        .collect();
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    pairs
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut [Vec<f64>], v: &mut [Vec<f64>], p: usize, q: usize) {
    let n = a.len();
    let apq = a[p][q];
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let app = a[p][p];
    let aqq = a[q][q];
    a[p][p] = app - t * apq;
    a[q][q] = aqq + t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];
        }
    }
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

/// `‖m·v − λ·v‖₂` evaluated in floating point.
pub fn residual(m: &[Vec<f64>], pair: &EigenPair) -> f64 {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            let mv: f64 = row.iter().zip(&pair.vector).map(|(a, b)| a * b).sum();
            let d = mv - pair.value * pair.vector[i];
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

pub fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows).unwrap()
    }

    fn values(a: &RatMatrix) -> Vec<f64> {
        sym_eigensolve(a, 1e-14).unwrap().into_iter().map(|p| p.value).collect()
    }

    #[test]
    fn diagonal() {
        let v = values(&m(&[vec![3, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]));
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn triangle_and_star_laplacians() {
        let tri = m(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        for (got, want) in values(&tri).iter().zip([0.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let star = m(&[
            vec![3, -1, -1, -1],
            vec![-1, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![-1, 0, 0, 1],
        ]);
        for (got, want) in values(&star).iter().zip([0.0, 1.0, 1.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn residuals_and_orthogonality() {
        let a = m(&[vec![4, 1, -2, 2], vec![1, 2, 0, 1], vec![-2, 0, 3, -2], vec![2, 1, -2, -1]]);
        let tol = 1e-12;
        let pairs = sym_eigensolve(&a, tol).unwrap();
        let f = a.to_f64();
        for p in &pairs {
            assert!(residual(&f, p) < 10.0 * tol * frobenius(&f));
        }
        for i in 0..4 {
            for j in 0..4 {
                let d: f64 = pairs[i].vector.iter().zip(&pairs[j].vector).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        assert!(sym_eigensolve(&m(&[vec![1, 2], vec![0, 1]]), 1e-12).is_err());
    }
}
