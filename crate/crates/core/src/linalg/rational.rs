//! Arbitrary-precision rationals and their textual form.
//!
//! Rationals are written `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar used throughout the crate. Always normalised
/// (`gcd(|p|, q) = 1`, `q > 0`).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: None,
        message: format!("invalid rational `{s}`"),
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator individually overflow f64; scale down first
        let bits = q.numer().bits().max(q.denom().bits()) as i64;
        let shift = (bits - 900).max(0) as usize;
        let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
        if d == 0.0 {
            if q.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            n / d
        }
    })
}

/// Nearest rational to `x` with denominator one, if `x` is finite.
pub fn round_to_integer(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    Some(Rational::from_integer(BigInt::from(x.round() as i64)))
}

/// Serde adapter writing a single rational as `"p/q"`.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
