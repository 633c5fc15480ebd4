//! Riordan arrays `(g, f)` relative to a reference sequence `(c_n)`, with
//! entries `d(n,k) = c_n [x^n] g f^k / c_k`.

pub mod named;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{RefSeq, Series};

#[derive(Clone, Debug)]
pub struct RiordanArray {
    g: Series,
    f: Series,
    c: RefSeq,
}

/// A- and Z-sequences: `f = x A(f)` and `g = g_0 / (1 - x Z(f))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AZPair {
    pub a: Series,
    pub z: Series,
}

impl RiordanArray {
    /// Both series are cut to the smaller truncation order.
    pub fn make(g: Series, f: Series, c: RefSeq) -> Result<Self> {
        if g.coeff(0).is_zero() {
            return Err(Error::NotUnit);
        }
        if !f.coeff(0).is_zero() {
            return Err(Error::HasConstantTerm);
        }
        let n = g.trunc().min(f.trunc());
        Ok(RiordanArray {
            g: g.truncate(n),
            f: f.truncate(n),
            c,
        })
    }

    pub fn identity(trunc: usize, c: RefSeq) -> Self {
        RiordanArray {
            g: Series::one(trunc),
            f: Series::x(trunc),
            c,
        }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn refseq(&self) -> &RefSeq {
        &self.c
    }

    pub fn trunc(&self) -> usize {
        self.g.trunc()
    }

    pub fn is_proper(&self) -> bool {
        self.trunc() >= 1 && !self.f.coeff(1).is_zero()
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::NotProper)
        }
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<Rational> {
        let trunc = self.trunc();
        if n > trunc || k > trunc {
            return Err(Error::OutOfRange {
                index: n.max(k),
                trunc,
            });
        }
        if k > n {
            return Ok(Rational::zero());
        }
        let col = self.g.mul(&self.f.pow_int(k as i64)?);
        Ok(col.coeff(n) * self.c.term(n)? / self.c.term(k)?)
    }

    /// Rows `0 ..= n_max`; row `n` has `n + 1` entries.
    pub fn matrix(&self, n_max: usize) -> Result<Vec<Vec<Rational>>> {
        let trunc = self.trunc();
        if n_max > trunc {
            return Err(Error::OutOfRange {
                index: n_max,
                trunc,
            });
        }
        let c = self.c.terms(n_max)?;
        let mut rows: Vec<Vec<Rational>> = (0..=n_max).map(|n| vec![Rational::zero(); n + 1]).collect();
        let mut col = self.g.truncate(n_max);
        let f = self.f.truncate(n_max);
        for k in 0..=n_max {
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row[k] = col.coeff(n) * &c[n] / &c[k];
            }
            col = col.mul(&f);
        }
        Ok(rows)
    }

    /// Fundamental theorem: `(g, f)` acts on a generating function `h` as
    /// `g (h o f)`.
    pub fn apply(&self, h: &Series) -> Result<Series> {
        self.require_proper()?;
        Ok(self.g.mul(&h.compose(&self.f)?))
    }

    /// `(g1, f1) * (g2, f2) = (g1 (g2 o f1), f2 o f1)`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray> {
        if self.c != other.c {
            return Err(Error::RefSeqMismatch);
        }
        self.require_proper()?;
        other.require_proper()?;
        let g = self.g.mul(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        RiordanArray::make(g, f, self.c.clone())
    }

    /// `(1 / (g o fbar), fbar)` with `fbar` the reverse of `f`.
    pub fn inverse(&self) -> Result<RiordanArray> {
        self.require_proper()?;
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.inverse()?;
        RiordanArray::make(g, fbar, self.c.clone())
    }

    /// Integer Riordan power; negative exponents go through the inverse.
    pub fn pow(&self, m: i64) -> Result<RiordanArray> {
        let base = if m < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RiordanArray::identity(self.trunc(), self.c.clone());
        for _ in 0..m.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    /// `A(y) = y / fbar(y)` and `Z(y) = (1 - g_0 / g(fbar(y))) / fbar(y)`,
    /// both known to order `trunc - 1`.
    pub fn az_sequences(&self) -> Result<AZPair> {
        self.require_proper()?;
        let fbar = self.f.revert()?;
        let fbar_over_y = fbar.shift_down(1)?;
        let a = fbar_over_y.inverse()?;
        let g0 = self.g.coeff(0).clone();
        let ratio = self.g.compose(&fbar)?.inverse()?.scale(&g0);
        let numer = (&Series::one(self.trunc()) - &ratio).shift_down(1)?;
        let z = numer.mul(&a);
        Ok(AZPair { a, z })
    }

    /// Rebuilds every row `n >= 1` from row `n - 1` through the A- and
    /// Z-sequences and compares with the materialized entries. With weights
    /// `w(n,k,t) = c_n c_t / (c_(n-1) c_k)`:
    /// `d(n,k) = sum_j a_j w(n,k,k+j-1) d(n-1,k+j-1)` for `k >= 1`, and
    /// `d(n,0) = sum_j z_j w(n,0,j) d(n-1,j)`. For `c_n = 1` the weights are 1.
    pub fn replay_az(&self, az: &AZPair) -> Result<bool> {
        let n_max = self.trunc();
        let d = self.matrix(n_max)?;
        let c = self.c.terms(n_max)?;
        for n in 1..=n_max {
            let prev = &d[n - 1];
            let scale = &c[n] / &c[n - 1];
            for k in 0..=n {
                let mut acc = Rational::zero();
                if k == 0 {
                    for (j, dj) in prev.iter().enumerate() {
                        acc += az.z.coeff(j) * &scale * &c[j] / &c[0] * dj;
                    }
                } else {
                    for (t, dt) in prev.iter().enumerate().skip(k - 1) {
                        let j = t + 1 - k;
                        acc += az.a.coeff(j) * &scale * &c[t] / &c[k] * dt;
                    }
                }
                if acc != d[n][k] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `d(n,n) = (g_0 / c_0) (f_1 / c_1)^n` on every diagonal entry.
    pub fn diagonal_law_holds(&self) -> Result<bool> {
        let n_max = self.trunc();
        let d = self.matrix(n_max)?;
        let c0 = self.c.term(0)?;
        let c1 = self.c.term(1.min(n_max))?;
        let base = self.g.coeff(0) / c0;
        let step = if n_max >= 1 { self.f.coeff(1) / c1 } else { Rational::zero() };
        Ok((0..=n_max).all(|n| d[n][n] == &base * rational::powi(&step, n as i64)))
    }

    /// True when `d(n,k) = 0` whenever `n - k` is not a multiple of `nu`.
    pub fn is_striped(&self, nu: usize) -> Result<bool> {
        let d = self.matrix(self.trunc())?;
        Ok(d.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(k, x)| (n - k) % nu == 0 || x.is_zero())
        }))
    }

    /// `sum_k d(n,k) y^k`.
    pub fn row_polynomial(&self, n: usize, y: &Rational) -> Result<Rational> {
        let d = self.matrix(n)?;
        Ok(d[n]
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, x| acc * y + x))
    }

    pub fn triangle(&self, n_max: usize) -> Result<Triangle> {
        Ok(Triangle {
            c: self.c.label().to_string(),
            n_max,
            rows: self.matrix(n_max)?,
        })
    }
}

/// Pair equality up to the common truncation, under the same reference
/// sequence.
impl PartialEq for RiordanArray {
    fn eq(&self, other: &RiordanArray) -> bool {
        self.c == other.c && self.g == other.g && self.f == other.f
    }
}

/// The iteration matrix `B(f) = (1, f)`.
pub fn iteration_matrix(f: &Series, c: RefSeq) -> Result<RiordanArray> {
    RiordanArray::make(Series::one(f.trunc()), f.clone(), c)
}

/// Faa di Bruno through iteration matrices:
/// `sum_k B(n,k) f_k = n! [x^n] f(g(x))` with `f_k = k! [x^k] f`.
pub fn faa_di_bruno_check(f: &Series, g: &Series, n: usize) -> Result<bool> {
    let e = RefSeq::Exponential;
    let b = iteration_matrix(g, e.clone())?;
    let row = &b.matrix(n)?[n];
    let lhs: Rational = row
        .iter()
        .enumerate()
        .map(|(k, bnk)| bnk * f.coefficient(k, &e).unwrap_or_else(|_| Rational::zero()))
        .sum();
    let rhs = f.compose(g)?.coefficient(n, &e)?;
    Ok(lhs == rhs)
}

/// Materialized rows with the reference sequence label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub c: String,
    pub n_max: usize,
    #[serde(with = "rows_serde")]
    pub rows: Vec<Vec<Rational>>,
}

impl Triangle {
    /// One row per line, entries as `p/q` separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(rational::format_rational).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

mod rows_serde {
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        rows.iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| parse_rational(t).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// `sum_k d(n,k) h_k` for each row.
pub fn matrix_vector(rows: &[Vec<Rational>], h: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|row| row.iter().zip(h).map(|(d, x)| d * x).sum())
        .collect()
}
