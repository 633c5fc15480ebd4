use num_traits::{One, Zero};
use std::collections::BTreeMap;

use super::NormalForm;
use crate::error::{Error, Result};
use crate::rational::{falling, int, Rational};
use crate::series::RefSeq;

/// The first rows of a row-finite matrix. Each stored row is complete: its
/// support may reach past the number of stored rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFiniteMatrix {
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl RowFiniteMatrix {
    pub fn from_rows(rows: Vec<BTreeMap<usize, Rational>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        RowFiniteMatrix { rows }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        RowFiniteMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().enumerate().collect())
                .collect(),
        )
    }

    pub fn identity(size: usize) -> Self {
        RowFiniteMatrix::from_rows(
            (0..size)
                .map(|n| BTreeMap::from([(n, Rational::one())]))
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, n: usize) -> &BTreeMap<usize, Rational> {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.rows[n].get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest column index any stored row touches.
    pub fn max_column(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.keys().next_back().copied()).max()
    }

    /// Top-left `size x size` block.
    pub fn corner(&self, size: usize) -> Vec<Vec<Rational>> {
        (0..size.min(self.rows.len()))
            .map(|n| (0..size).map(|k| self.get(n, k)).collect())
            .collect()
    }

    /// Product `self * other`; every column touched by `self` must be a
    /// stored row of `other`.
    pub fn mul(&self, other: &RowFiniteMatrix) -> Result<RowFiniteMatrix> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
            for (&t, a) in row {
                let inner = other.rows.get(t).ok_or(Error::OutOfRange {
                    index: t,
                    trunc: other.rows.len().saturating_sub(1),
                })?;
                for (&k, b) in inner {
                    *out.entry(k).or_insert_with(Rational::zero) += a * b;
                }
            }
            rows.push(out);
        }
        Ok(RowFiniteMatrix::from_rows(rows))
    }

    /// Image of the coefficient sequence `a`; needs every touched column.
    pub fn apply(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().try_fold(Rational::zero(), |acc, (&k, m)| {
                    let x = a.get(k).ok_or(Error::OutOfRange {
                        index: k,
                        trunc: a.len().saturating_sub(1),
                    })?;
                    Ok(acc + m * x)
                })
            })
            .collect()
    }

    /// Lower triangular with ones on the diagonal.
    pub fn is_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            row.keys().all(|&k| k <= n) && row.get(&n).is_some_and(One::is_one)
        })
    }
}

/// Bargmann-Fock matrix of `u` on the basis `x^k / c_k`: `X^i D^j` sends
/// `x^k` to `k(k-1)...(k-j+1) x^(k-j+i)`. Rows `0 .. size` are produced in
/// full. The central element is set to 1.
pub fn to_matrix(u: &NormalForm, size: usize, c: &RefSeq) -> Result<RowFiniteMatrix> {
    let u = u.collapse();
    let mut rows = Vec::with_capacity(size);
    for n in 0..size {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        let cn = c.term(n)?;
        for (&(i, j, _), coeff) in u.terms() {
            let k = n as i64 + j as i64 - i as i64;
            if k < 0 {
                continue;
            }
            let k = k as usize;
            let w = falling(&int(k as i64), j);
            if w.is_zero() {
                continue;
            }
            let e = coeff * w * &cn / c.term(k)?;
            *row.entry(k).or_insert_with(Rational::zero) += e;
        }
        rows.push(row);
    }
    Ok(RowFiniteMatrix::from_rows(rows))
}
