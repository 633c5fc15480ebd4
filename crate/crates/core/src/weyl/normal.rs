use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::Letter;
use crate::rational::{self, binomial, factorial, int, Rational};

/// Whether the central element is tracked (`aa+ = a+a + c`) or set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hw,
    Env,
}

/// Linear combination of normally ordered monomials `(a+)^i a^j c^m`, keyed
/// by `(i, j, m)`. Zero coefficients are never stored, and in `Hw` mode `m`
/// is always 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    mode: Mode,
    terms: BTreeMap<(usize, usize, usize), Rational>,
}

impl NormalForm {
    pub fn zero(mode: Mode) -> Self {
        NormalForm {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(mode: Mode) -> Self {
        NormalForm::monomial(0, 0, 0, Rational::one(), mode)
    }

    pub fn monomial(i: usize, j: usize, m: usize, coeff: Rational, mode: Mode) -> Self {
        let mut nf = NormalForm::zero(mode);
        nf.insert((i, j, m), coeff);
        nf
    }

    /// `X^i D^j` in the central-free algebra.
    pub fn xd(i: usize, j: usize) -> Self {
        NormalForm::monomial(i, j, 0, Rational::one(), Mode::Hw)
    }

    pub fn letter(l: Letter, mode: Mode) -> Self {
        match l {
            Letter::A => NormalForm::monomial(0, 1, 0, Rational::one(), mode),
            Letter::B => NormalForm::monomial(1, 0, 0, Rational::one(), mode),
            Letter::C => NormalForm::monomial(0, 0, 1, Rational::one(), mode),
        }
    }

    /// Builds from `(i, j, m, coeff)` tuples, summing repeated keys.
    pub fn from_terms<I>(terms: I, mode: Mode) -> Self
    where
        I: IntoIterator<Item = ((usize, usize, usize), Rational)>,
    {
        let mut nf = NormalForm::zero(mode);
        for (k, c) in terms {
            nf.insert(k, c);
        }
        nf
    }

    fn insert(&mut self, (i, j, m): (usize, usize, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = if self.mode == Mode::Hw { 0 } else { m };
        let entry = self.terms.entry((i, j, m)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j, m));
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize, usize), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize, m: usize) -> Rational {
        self.terms.get(&(i, j, m)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under `c -> 1`.
    pub fn collapse(&self) -> NormalForm {
        NormalForm::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone())), Mode::Hw)
    }

    fn align(&self, other: &NormalForm) -> (NormalForm, NormalForm) {
        if self.mode == other.mode {
            (self.clone(), other.clone())
        } else {
            (self.collapse(), other.collapse())
        }
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let (mut a, b) = self.align(other);
        for (k, c) in b.terms {
            a.insert(k, c);
        }
        a
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> NormalForm {
        NormalForm::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)), self.mode)
    }

    /// Product through the closed-form structure constants
    /// `(a+)^k a^l (a+)^r a^s = sum_i i! C(l,i) C(r,i) (a+)^(k+r-i) a^(l+s-i) c^i`.
    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let (a, b) = self.align(other);
        let mut out = NormalForm::zero(a.mode);
        for (&(k, l, p), x) in &a.terms {
            for (&(r, s, q), y) in &b.terms {
                let xy = x * y;
                for i in 0..=l.min(r) {
                    let w = factorial(i) * binomial(&int(l as i64), i) * binomial(&int(r as i64), i);
                    out.insert((k + r - i, l + s - i, p + q + i), &xy * w);
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &NormalForm) -> NormalForm {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, n: usize) -> NormalForm {
        (0..n).fold(NormalForm::identity(self.mode), |acc, _| acc.mul(self))
    }

    /// The common excess `i - j` of all monomials, `None` for zero.
    pub fn excess(&self) -> Result<Option<i64>, crate::Error> {
        let mut seen = None;
        for &(i, j, _) in self.terms.keys() {
            let e = i as i64 - j as i64;
            match seen {
                None => seen = Some(e),
                Some(s) if s != e => return Err(crate::Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(seen)
    }
}

fn power(name: &str, k: usize) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    }
}

/// Terms in descending key order, e.g. `a+^2 a + 2 a+`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j, m), c)) in self.terms.iter().rev().enumerate() {
            let mag = rational::format_rational(&c.abs());
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let parts: Vec<String> = [power("a+", i), power("a", j), power("c", m)]
                .into_iter()
                .flatten()
                .collect();
            match (parts.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", parts.join(" "))?,
                (false, false) => write!(f, "{mag} {}", parts.join(" "))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: usize,
    j: usize,
    m: usize,
    #[serde(with = "rational::serde_str")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct NormalFormRepr {
    mode: Mode,
    terms: Vec<TermRepr>,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NormalFormRepr {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j, m), c)| TermRepr {
                    i,
                    j,
                    m,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = NormalFormRepr::deserialize(d)?;
        let mut nf = NormalForm::zero(repr.mode);
        for t in repr.terms {
            if t.coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient in normal form"));
            }
            if repr.mode == Mode::Hw && t.m != 0 {
                return Err(D::Error::custom("central exponent in hw mode"));
            }
            if nf.terms.insert((t.i, t.j, t.m), t.coeff).is_some() {
                return Err(D::Error::custom("duplicate term"));
            }
        }
        Ok(nf)
    }
}
