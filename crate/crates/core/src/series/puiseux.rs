use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::Series;
use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rational};

/// Truncated Puiseux series `sum_i a_i x^((lo + i)/ram) + O(x^((lo + len)/ram))`.
///
/// The series is known exactly on the exponent grid `k/ram` strictly below
/// its precision `(lo + len)/ram`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    ram: u64,
    lo: i64,
    coeffs: Vec<Rational>,
}

impl PuiseuxSeries {
    pub fn new(ram: u64, lo: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if ram == 0 {
            return Err(Error::Invalid("ramification must be positive".into()));
        }
        Ok(PuiseuxSeries { ram, lo, coeffs })
    }

    /// Embeds an ordinary series; precision is `trunc + 1`.
    pub fn from_series(s: &Series) -> Self {
        PuiseuxSeries {
            ram: 1,
            lo: 0,
            coeffs: s.coeffs().to_vec(),
        }
    }

    pub fn ram(&self) -> u64 {
        self.ram
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exponent of the `i`-th stored coefficient.
    pub fn exponent(&self, i: usize) -> Rational {
        rat(self.lo + i as i64, self.ram as i64)
    }

    /// Exclusive bound of the known exponents.
    pub fn precision(&self) -> Rational {
        self.exponent(self.coeffs.len())
    }

    /// Coefficient of `x^e`, or `None` when `e` is at or past the precision.
    pub fn coeff_at(&self, e: &Rational) -> Option<Rational> {
        if *e >= self.precision() {
            return None;
        }
        let scaled = e * int(self.ram as i64);
        if !rational::is_integer(&scaled) {
            return Some(Rational::zero());
        }
        let k = scaled.to_integer().to_i64()? - self.lo;
        if k < 0 {
            return Some(Rational::zero());
        }
        Some(self.coeffs[k as usize].clone())
    }

    /// Rewrites over the finer grid `1/ram`; `ram` must be a multiple of the
    /// current ramification.
    pub fn refine(&self, ram: u64) -> PuiseuxSeries {
        assert!(ram.is_multiple_of(self.ram), "refinement must be a multiple");
        let f = ram / self.ram;
        if f == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() * f as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * f as usize] = c.clone();
        }
        PuiseuxSeries {
            ram,
            lo: self.lo * f as i64,
            coeffs,
        }
    }

    /// Drops leading zeros and reduces the ramification as far as the
    /// support and the precision allow.
    pub fn normalize(&self) -> PuiseuxSeries {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        let lead = lead.unwrap_or(self.coeffs.len());
        let lo = self.lo + lead as i64;
        let coeffs = self.coeffs[lead..].to_vec();
        let end = lo + coeffs.len() as i64;
        let mut d = (self.ram as i64).gcd(&end);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                d = d.gcd(&(lo + i as i64));
            }
        }
        let d = d.max(1);
        let new_lo = if coeffs.is_empty() { end } else { lo };
        let first = Integer::div_ceil(&new_lo, &d) * d;
        let kept: Vec<Rational> = (first..end)
            .step_by(d as usize)
            .map(|e| coeffs[(e - lo) as usize].clone())
            .collect();
        PuiseuxSeries {
            ram: self.ram / d as u64,
            lo: first / d,
            coeffs: kept,
        }
    }

    /// `mu_rho(U) = x^rho U`.
    pub fn mu_action(&self, rho: &Rational) -> PuiseuxSeries {
        let den = rho.denom().to_u64().expect("denominator fits u64");
        let ram = self.ram.lcm(&den);
        let mut out = self.refine(ram);
        let shift = rho * int(ram as i64);
        out.lo += shift.to_integer().to_i64().expect("shift fits i64");
        out
    }

    /// Inverse of [`mu_action`](Self::mu_action).
    pub fn mu_inverse(&self, rho: &Rational) -> PuiseuxSeries {
        self.mu_action(&-rho)
    }

    fn common_grid(&self, other: &PuiseuxSeries) -> (PuiseuxSeries, PuiseuxSeries) {
        let ram = self.ram.lcm(&other.ram);
        (self.refine(ram), other.refine(ram))
    }

    /// Sum over the common grid, known up to the smaller precision.
    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let (a, b) = self.common_grid(other);
        let lo = a.lo.min(b.lo);
        let end = (a.lo + a.coeffs.len() as i64).min(b.lo + b.coeffs.len() as i64);
        let at = |s: &PuiseuxSeries, e: i64| -> Rational {
            let k = e - s.lo;
            if k < 0 {
                Rational::zero()
            } else {
                s.coeffs[k as usize].clone()
            }
        };
        let coeffs = (lo..end.max(lo)).map(|e| at(&a, e) + at(&b, e)).collect();
        PuiseuxSeries {
            ram: a.ram,
            lo,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rational) -> PuiseuxSeries {
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product with an ordinary series `s` known modulo `x^(N+1)`.
    pub fn mul_series(&self, s: &Series) -> PuiseuxSeries {
        let r = self.ram as usize;
        let len = self.coeffs.len().min((s.trunc() + 1) * r);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in s.coeffs().iter().enumerate() {
                let k = i + j * r;
                if k >= len {
                    break;
                }
                coeffs[k] += a * b;
            }
        }
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs,
        }
    }

    /// `U(x g(x))` for an ordinary series `g` with `g(0) = 1`: each term
    /// `a x^e` becomes `a x^e g^e`.
    pub fn substitute_xg(&self, g: &Series) -> Result<PuiseuxSeries> {
        let r = self.ram as usize;
        let len = self.coeffs.len().min((g.trunc() + 1) * r);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            let ge = g.pow_rational(&self.exponent(i))?;
            for (j, b) in ge.coeffs().iter().enumerate() {
                let k = i + j * r;
                if k >= len {
                    break;
                }
                coeffs[k] += a * b;
            }
        }
        Ok(PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs,
        })
    }
}

/// Equality over the common grid, up to the smaller precision.
impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &PuiseuxSeries) -> bool {
        self.add(&other.scale(&int(-1)))
            .coeffs
            .iter()
            .all(Zero::is_zero)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.exponent(i);
            let sep = if first {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            first = false;
            let mag = rational::format_rational(&c.abs());
            if e.is_zero() {
                write!(f, "{sep}{mag}")?;
            } else {
                let coef = if mag == "1" { String::new() } else { format!("{mag}*") };
                write!(f, "{sep}{coef}x^({})", rational::format_rational(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^({}))", rational::format_rational(&self.precision()))
    }
}

#[derive(Serialize, Deserialize)]
struct PuiseuxRepr {
    ram: u64,
    lo: i64,
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PuiseuxRepr {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PuiseuxRepr::deserialize(d)?;
        PuiseuxSeries::new(r.ram, r.lo, r.coeffs).map_err(serde::de::Error::custom)
    }
}
