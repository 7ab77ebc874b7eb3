//! Dense rational matrices with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::RatPolynomial;
use super::rational::{format_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: &Rational) -> Result<Self> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| &self[(r, c)]).sum()).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_f64).collect())
            .collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Exact rank by fraction-free (Bareiss) elimination on integer-scaled rows.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        bareiss_rank(&mut a, self.cols)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Exact rank together with a kernel basis (as matrix columns).
    pub fn rank_and_kernel(&self) -> (usize, RatMatrix) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            kernel[(f, k)] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                kernel[(p, k)] = -r[(i, f)].clone();
            }
        }
        (pivots.len(), kernel)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(red.select(&rows, &cols))
    }

    /// Exact monic characteristic polynomial `det(t·I − self)` by the
    /// Faddeev–LeVerrier recursion.
    ///
    /// The matrix is first scaled to an integer matrix `B = D·A`, whose
    /// recursion stays in the integers; coefficients are rescaled at the end.
    pub fn charpoly(&self) -> Result<RatPolynomial> {
        self.require_square()?;
        let n = self.rows;
        let denom_lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let scale = Rational::from_integer(denom_lcm.clone());
        let sparse: Vec<Vec<(usize, BigInt)>> = (0..n)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(c, e)| (c, (e * &scale).to_integer()))
                    .collect()
            })
            .collect();

        // c[j] is the coefficient of t^j in det(tI - B).
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = B·M_{k-1} + c_{n-k+1}·I
            let mut next = vec![vec![BigInt::zero(); n]; n];
            if k > 1 {
                for (i, row) in sparse.iter().enumerate() {
                    let out = &mut next[i];
                    for (kk, b) in row {
                        for (o, v) in out.iter_mut().zip(&m[*kk]) {
                            if !v.is_zero() {
                                *o += b * v;
                            }
                        }
                    }
                }
            }
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            // c_{n-k} = -tr(B·M_k)/k
            let mut tr = BigInt::zero();
            for (i, row) in sparse.iter().enumerate() {
                for (kk, b) in row {
                    tr += b * &m[*kk][i];
                }
            }
            let (q, rem) = tr.div_rem(&BigInt::from(k));
            debug_assert!(rem.is_zero(), "Faddeev-LeVerrier trace not divisible");
            c[n - k] = -q;
        }
        // det(tI - A) = D^{-n} det((Dt)I - B): coefficient j scales by D^{j-n}.
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut pow = Rational::one();
        let inv = scale.recip();
        for j in (0..=n).rev() {
            coeffs.push((Rational::from_integer(c[j].clone()) * &pow, j));
            pow *= &inv;
        }
        coeffs.sort_by_key(|(_, j)| *j);
        Ok(RatPolynomial::new(coeffs.into_iter().map(|(v, _)| v).collect()))
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                let l = Rational::from_integer(l);
                row.iter().map(|e| (e * &l).to_integer()).collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Rank of an integer matrix by Bareiss elimination; `a` is consumed as scratch.
fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl serde::Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{rat, ratio};

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn charpoly_identity_and_zero() {
        let p = RatMatrix::identity(2).charpoly().unwrap();
        assert_eq!(p.coeffs(), &[rat(1), rat(-2), rat(1)]);
        let z = RatMatrix::zeros(3, 3).charpoly().unwrap();
        assert_eq!(z.coeffs(), &[rat(0), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn charpoly_of_doubled_triangle_laplacian() {
        // 2L of the triangle: t^3 - 12 t^2 + 36 t
        let l2 = m(&[vec![4, -2, -2], vec![-2, 4, -2], vec![-2, -2, 4]]);
        let p = l2.charpoly().unwrap();
        assert_eq!(p.coeffs(), &[rat(0), rat(36), rat(-12), rat(1)]);
    }

    #[test]
    fn charpoly_with_fractions() {
        // [[1/2, 1], [0, 1/3]] -> (t - 1/2)(t - 1/3) = t^2 - 5/6 t + 1/6
        let a = RatMatrix::from_rows(vec![vec![ratio(1, 2), rat(1)], vec![rat(0), ratio(1, 3)]]).unwrap();
        assert_eq!(a.charpoly().unwrap().coeffs(), &[ratio(1, 6), ratio(-5, 6), rat(1)]);
    }

    #[test]
    fn charpoly_rejects_non_square() {
        assert!(RatMatrix::zeros(2, 3).charpoly().is_err());
    }

    #[test]
    fn rank_and_kernel_examples() {
        let (r, k) = RatMatrix::identity(4).rank_and_kernel();
        assert_eq!((r, k.cols()), (4, 0));
        let ones = m(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(ones.rank(), 1);
        let (r, k) = ones.rank_and_kernel();
        assert_eq!((r, k.cols()), (1, 2));
        assert!(ones.mul(&k).unwrap().is_zero());

        let l = m(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let (r, k) = l.rank_and_kernel();
        assert_eq!(r, 2);
        assert_eq!(k.column(0), vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn bareiss_agrees_with_rref() {
        let a = m(&[
            vec![2, 4, -2, 6],
            vec![1, 2, -1, 3],
            vec![0, 1, 5, -1],
            vec![2, 5, 3, 5],
        ]);
        assert_eq!(a.rank(), a.rref().1.len());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).inverse(), Err(Error::Singular));
    }
}
