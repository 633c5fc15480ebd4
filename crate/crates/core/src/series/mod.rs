//! Truncated formal power series over exact rationals.
//!
//! A [`Series`] with truncation order `N` stores the coefficients of
//! `x^0 .. x^N` in the plain monomial basis and stands for the class of
//! series modulo `x^(N+1)`. Binary operations truncate to the smaller of the
//! two orders, so every stored coefficient is exact.

pub mod counting;
mod puiseux;
mod refseq;

pub use puiseux::PuiseuxSeries;
pub use refseq::RefSeq;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<Rational>,
}

/// Cached powers of an inner series; see [`Series::power_table`].
#[derive(Clone, Debug)]
pub struct PowerTable {
    powers: Vec<Series>,
}

impl PowerTable {
    pub fn trunc(&self) -> usize {
        self.powers.len() - 1
    }

    /// `outer(inner)`, truncated to the smaller order.
    pub fn compose(&self, outer: &Series) -> Series {
        let n = self.trunc().min(outer.trunc());
        let mut out = vec![Rational::zero(); n + 1];
        for (k, a) in outer.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (i, b) in self.powers[k].coeffs.iter().enumerate().take(n + 1).skip(k) {
                if !b.is_zero() {
                    out[i] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

/// Outcome of comparing two series over their common prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Equal on every coefficient up to and including this order.
    EqualToOrder(usize),
    /// First index where the two series differ.
    DifferAt(usize),
}

impl Series {
    /// Builds a series from coefficients `c_0 .. c_N`. An empty vector gives
    /// the zero series of order 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Series { coeffs }
    }

    /// Builds a series of order `trunc` from a prefix, padding with zeros and
    /// dropping anything past `trunc`.
    pub fn from_coeffs(prefix: &[Rational], trunc: usize) -> Self {
        let coeffs = (0..=trunc)
            .map(|i| prefix.get(i).cloned().unwrap_or_else(Rational::zero))
            .collect();
        Series { coeffs }
    }

    pub fn from_ints(prefix: &[i64], trunc: usize) -> Self {
        let v: Vec<Rational> = prefix.iter().map(|&c| int(c)).collect();
        Series::from_coeffs(&v, trunc)
    }

    pub fn zero(trunc: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Series::monomial(Rational::one(), 0, trunc)
    }

    /// The identity substitution `x`.
    pub fn x(trunc: usize) -> Self {
        Series::monomial(Rational::one(), 1, trunc)
    }

    /// `c * x^k`, truncated at `trunc` (zero if `k > trunc`).
    pub fn monomial(c: Rational, k: usize, trunc: usize) -> Self {
        let mut s = Series::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Geometric series `1 / (1 - a x)`.
    pub fn geometric(a: &Rational, trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(trunc + 1);
        let mut p = Rational::one();
        for _ in 0..=trunc {
            coeffs.push(p.clone());
            p *= a;
        }
        Series { coeffs }
    }

    /// `exp(a x)`.
    pub fn exp_linear(a: &Rational, trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(trunc + 1);
        let mut p = Rational::one();
        for n in 0..=trunc {
            coeffs.push(p.clone());
            p = p * a / int(n as i64 + 1);
        }
        Series { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`. Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Lowers the truncation order to `min(trunc, n)`.
    pub fn truncate(&self, n: usize) -> Series {
        let keep = n.min(self.trunc());
        Series {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    /// Smallest index with a nonzero stored coefficient; `None` stands for
    /// infinite order (every stored coefficient vanishes).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// True when every coefficient past `degree` vanishes.
    pub fn is_polynomial_of_degree(&self, degree: usize) -> bool {
        self.coeffs.iter().skip(degree + 1).all(Zero::is_zero)
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`; the result is exact to order `trunc + k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divides by `x^k`. Requires the first `k` coefficients to vanish and
    /// `k <= trunc`.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k > self.trunc() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid(format!("series is not divisible by x^{k}")));
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
        let n = self.trunc().min(other.trunc());
        Series {
            coeffs: (0..=n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let n = self.trunc();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &b[k - j];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Series { coeffs: b })
    }

    /// `self ∘ inner`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.trunc().min(inner.trunc());
        let inner = inner.truncate(n);
        // Horner: f_0 + g (f_1 + g (f_2 + ...)).
        let mut acc = Series::monomial(self.coeffs[n].clone(), 0, n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// The powers `self^0 .. self^N`, for composing many outer series with
    /// the same inner one.
    pub fn power_table(&self) -> Result<PowerTable> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.trunc();
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(Series::one(n));
        for k in 1..=n {
            let next = powers[k - 1].mul(self);
            powers.push(next);
        }
        Ok(PowerTable { powers })
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] rev(f) = (1/n) [x^(n-1)] (x / f)^n`.
    pub fn revert(&self) -> Result<Series> {
        let n = self.trunc();
        if n == 0 {
            return Err(Error::NotProper);
        }
        if !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotProper);
        }
        let phi = self.shift_down(1)?;
        let h = phi.inverse()?;
        let mut out = vec![Rational::zero(); n + 1];
        let mut power = Series::one(h.trunc());
        for k in 1..=n {
            power = power.mul(&h);
            out[k] = power.coeffs[k - 1].clone() / int(k as i64);
        }
        Ok(Series { coeffs: out })
    }

    /// `self^e` for an integer exponent; negative exponents need a unit.
    pub fn pow_int(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Series::one(self.trunc());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `self^rho` for rational `rho`, defined as `exp(rho log self)`. The
    /// base must have constant term 1. Uses the recurrence obtained from
    /// `f h' = rho f' h`.
    pub fn pow_rational(&self, rho: &Rational) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BaseNotUnit1);
        }
        let n = self.trunc();
        let mut h: Vec<Rational> = Vec::with_capacity(n + 1);
        h.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let f = &self.coeffs[k];
                if f.is_zero() {
                    continue;
                }
                let w = rho * int(k as i64) - int((m - k) as i64);
                acc += w * f * &h[m - k];
            }
            h.push(acc / int(m as i64));
        }
        Ok(Series { coeffs: h })
    }

    pub fn derivative(&self) -> Series {
        let n = self.trunc();
        if n == 0 {
            return Series::zero(0);
        }
        Series {
            coeffs: (1..=n).map(|k| &self.coeffs[k] * int(k as i64)).collect(),
        }
    }

    /// Antiderivative with zero constant term; exact to order `trunc + 1`.
    pub fn integral(&self) -> Series {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / int(k as i64 + 1)),
        );
        Series { coeffs }
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpDomain);
        }
        let n = self.trunc();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc += int(k as i64) * f * &e[m - k];
                }
            }
            e.push(acc / int(m as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogDomain);
        }
        let n = self.trunc();
        let mut l = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = int(m as i64) * &self.coeffs[m];
            for k in 1..m {
                let f = &self.coeffs[m - k];
                if !f.is_zero() {
                    acc -= int(k as i64) * &l[k] * f;
                }
            }
            l[m] = acc / int(m as i64);
        }
        Ok(Series { coeffs: l })
    }

    /// Coefficient of `x^n / c_n`, i.e. `c_n [x^n] self`.
    pub fn coefficient(&self, n: usize, c: &RefSeq) -> Result<Rational> {
        if n > self.trunc() {
            return Err(Error::OutOfRange {
                index: n,
                trunc: self.trunc(),
            });
        }
        Ok(c.term(n)? * &self.coeffs[n])
    }

    /// Evaluates the stored polynomial at `y`.
    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    /// Compares over the common prefix `0 ..= min(trunc)`.
    pub fn agreement(&self, other: &Series) -> Agreement {
        let n = self.trunc().min(other.trunc());
        match (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i]) {
            Some(i) => Agreement::DifferAt(i),
            None => Agreement::EqualToOrder(n),
        }
    }

    /// Ultrametric distance `2^-ord(f - g)` over the common prefix; zero when
    /// the prefixes agree.
    pub fn distance(&self, other: &Series) -> Rational {
        match self.agreement(other) {
            Agreement::EqualToOrder(_) => Rational::zero(),
            Agreement::DifferAt(k) => rational::powi(&int(2), -(k as i64)),
        }
    }
}

/// Prefix equality: two series are equal when they agree up to the smaller
/// truncation order.
impl PartialEq for Series {
    fn eq(&self, other: &Series) -> bool {
        matches!(self.agreement(other), Agreement::EqualToOrder(_))
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = rational::format_rational(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.trunc() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    trunc: usize,
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            trunc: self.trunc(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.trunc + 1 {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients for trunc {}, got {}",
                repr.trunc + 1,
                repr.trunc,
                repr.coeffs.len()
            )));
        }
        Ok(Series::new(repr.coeffs))
    }
}

#[cfg(test)]
mod tests;
