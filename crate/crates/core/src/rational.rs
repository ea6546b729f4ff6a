//! Exact rational scalars and the integral partial order on them.
//!
//! Entries of tableaux and coordinates of weights are compared with the
//! partial order `a >= b` iff `a - b` is a nonnegative integer. Two values are
//! *comparable* exactly when they lie in the same coset of Q modulo Z.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Representative of the coset `q + Z` in `[0, 1)`.
pub fn coset_rep(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn same_coset(a: &Rational, b: &Rational) -> bool {
    (a - b).is_integer()
}

/// `a > b` in the integral partial order: `a - b` is a positive integer.
pub fn int_gt(a: &Rational, b: &Rational) -> bool {
    let d = a - b;
    d.is_integer() && d.is_positive()
}

/// Partial comparison under the integral order; `None` for different cosets.
pub fn int_cmp(a: &Rational, b: &Rational) -> Option<Ordering> {
    if same_coset(a, b) {
        Some(a.cmp(b))
    } else {
        None
    }
}

/// Total order used for canonical forms: coset representative first, then
/// value. Restricted to one coset it agrees with the integral order.
pub fn canonical_cmp(a: &Rational, b: &Rational) -> Ordering {
    coset_rep(a).cmp(&coset_rep(b)).then_with(|| a.cmp(b))
}

/// Convert to `i64` if the value is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Nearest rational with denominator at most `max_den`, via continued
/// fractions. Returns `None` if that approximation is further than `tol`.
pub fn from_f64_approx(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        best = Some((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let rem = r - a as f64;
        if rem.abs() < 1e-15 {
            break;
        }
        r = 1.0 / rem;
    }
    let (h, k) = best?;
    if (h as f64 / k as f64 - x).abs() > tol {
        return None;
    }
    Some(Rational::new(BigInt::from(h), BigInt::from(k)))
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter: a rational as its string form, accepting JSON integers too.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?.into_rational().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_rows {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<RationalRepr>>::deserialize(d)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Serde adapter: an integer as its decimal string, accepting JSON integers too.
pub mod serde_int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let q = RationalRepr::deserialize(d)?.into_rational().map_err(serde::de::Error::custom)?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(serde::de::Error::custom(format!("{} is not an integer", format(&q))))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Str(String),
}

impl RationalRepr {
    fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Int(n) => Ok(int(n)),
            RationalRepr::Str(s) => parse(&s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_order() {
        assert!(int_gt(&int(3), &int(1)));
        assert!(!int_gt(&int(1), &int(1)));
        assert!(!int_gt(&frac(3, 2), &int(1)));
        assert_eq!(int_cmp(&frac(1, 2), &int(1)), None);
        assert_eq!(int_cmp(&frac(5, 2), &frac(1, 2)), Some(Ordering::Greater));
    }

    #[test]
    fn coset_rep_in_unit_interval() {
        assert_eq!(coset_rep(&frac(-1, 3)), frac(2, 3));
        assert_eq!(coset_rep(&int(-4)), int(0));
        assert_eq!(coset_rep(&frac(7, 2)), frac(1, 2));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse(" -4 ").unwrap(), int(-4));
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(format(&frac(-3, 2)), "-3/2");
        assert_eq!(format(&int(7)), "7");
    }

    #[test]
    fn float_approximation() {
        assert_eq!(from_f64_approx(0.5000000001, 1000, 1e-6), Some(frac(1, 2)));
        assert_eq!(from_f64_approx(-2.0, 1000, 1e-9), Some(int(-2)));
        assert_eq!(from_f64_approx(std::f64::consts::PI, 10, 1e-9), None);
    }
}
