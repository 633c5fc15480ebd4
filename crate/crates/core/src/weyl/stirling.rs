use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::NormalForm;
use crate::error::{Error, Result};
use crate::rational::{self, binomial, factorial, falling, int, Rational};

/// Generalized Stirling numbers `S(n, k)` of a homogeneous operator.
///
/// For excess `E >= 0`, `N(w^n) = X^(nE) sum_k S(n,k) X^k D^k`; for `E < 0`,
/// `N(w^n) = (sum_k S(n,k) X^k D^k) D^(n|E|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSTable {
    omega: NormalForm,
    excess: i64,
    rows: Vec<Vec<Rational>>,
}

impl GSTable {
    pub fn omega(&self) -> &NormalForm {
        &self.omega
    }

    pub fn excess(&self) -> i64 {
        self.excess
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `S(n, k)`, zero when absent.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Each row `n` ends with a 1 in column `n * step`.
    pub fn staircase(&self, step: usize) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            let last = row.iter().rposition(|c| !c.is_zero());
            last == Some(n * step) && row[n * step].is_one()
        })
    }

    /// Lower triangular with unit diagonal.
    pub fn is_unitriangular(&self) -> bool {
        self.staircase(1)
    }
}

impl Serialize for GSTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(rational::format_rational).collect())
            .collect();
        let mut st = s.serialize_struct("GSTable", 3)?;
        st.serialize_field("omega", &self.omega)?;
        st.serialize_field("excess", &self.excess)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Reads `S(n, k)` off the normal forms of `w^0 .. w^n_max`. The central
/// element, if tracked, is set to 1.
pub fn gen_stirling(omega: &NormalForm, n_max: usize) -> Result<GSTable> {
    let omega = omega.collapse();
    let excess = omega
        .excess()?
        .ok_or_else(|| Error::Invalid("zero operator has no excess".into()))?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut p = NormalForm::identity(omega.mode());
    for n in 0..=n_max {
        let mut row: Vec<Rational> = Vec::new();
        for (&(i, j, _), c) in p.terms() {
            let k = if excess >= 0 { j } else { i };
            debug_assert_eq!(i as i64 - j as i64, n as i64 * excess);
            if row.len() <= k {
                row.resize(k + 1, Rational::zero());
            }
            row[k] = c.clone();
        }
        if row.is_empty() {
            row.push(Rational::zero());
        }
        rows.push(row);
        if n < n_max {
            p = p.mul(&omega);
        }
    }
    Ok(GSTable {
        omega,
        excess,
        rows,
    })
}

/// Closed form for balanced `w = sum_m alpha(m) X^m D^m`, `m >= 1`, with
/// `alpha[0] = alpha(1)`:
/// `S(n,k) = (1/k!) sum_j (-1)^(k-j) C(k,j) h(j)^n`,
/// `h(y) = sum_m alpha(m) y (y-1) ... (y-m+1)`.
///
/// The `j = 0` term vanishes for `n >= 1` since `h(0) = 0`; keeping it makes
/// `S(0, 0) = 1`.
pub fn balanced_stirling_explicit(alpha: &[Rational], n: usize, k: usize) -> Rational {
    let h = |y: usize| -> Rational {
        alpha
            .iter()
            .enumerate()
            .map(|(i, a)| a * falling(&int(y as i64), i + 1))
            .sum()
    };
    let mut acc = Rational::zero();
    for j in 0..=k {
        let sign = if (k - j).is_multiple_of(2) { int(1) } else { int(-1) };
        acc += sign * binomial(&int(k as i64), j) * rational::powi(&h(j), n as i64);
    }
    acc / factorial(k)
}
