//! Univariate polynomials over the rationals, lowest degree first.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    /// `Π (t - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| acc.mul(&Self::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    match other.coeffs.get(i) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dl) = divisor.leading() else {
            return Err(Error::ZeroPolynomial);
        };
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let inv = dl.recip();
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// Yun's square-free decomposition: returns `(factor, multiplicity)`
    /// pairs of monic square-free, pairwise coprime polynomials whose
    /// product (with multiplicities) is the monic version of `self`.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a)?.0;
        let mut c = df.div_rem(&a)?.0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a)?.0;
            c = d.div_rem(&a)?.0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}

impl serde::Serialize for RatPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}
