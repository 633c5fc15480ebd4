//! Arbitrary-precision rationals and their string form.
//!
//! Values are `num_rational::BigRational`, which is always kept reduced with a
//! positive denominator. The textual form is `"p/q"`, or `"p"` when the
//! denominator is one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `p/q` as a rational. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational {t:?}"),
    };
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p = BigInt::from_str(num).map_err(|_| bad())?;
    let q = BigInt::from_str(den).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Generalized binomial coefficient `C(a, k)` for rational `a`.
pub fn binomial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (a - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn falling(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a - int(i as i64)))
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn powi(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r`, if it is an integer that fits an `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals.
pub mod serde_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}
