use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{factorial, falling, int, powi, rat, Rational};
use crate::riordan::RiordanArray;
use crate::series::{RefSeq, Series};
use crate::weyl::{gen_stirling, GSTable, NormalForm, RowFiniteMatrix};

/// `M(n,k) = c_n [x^n] g phi^k / c_k` on the `size x size` corner.
pub fn sheffer_matrix(g: &Series, phi: &Series, c: &RefSeq, size: usize) -> Result<RowFiniteMatrix> {
    if size == 0 {
        return Ok(RowFiniteMatrix::from_dense(&[]));
    }
    let t = RiordanArray::make(g.clone(), phi.clone(), c.clone())?;
    Ok(RowFiniteMatrix::from_dense(&t.matrix(size - 1)?))
}

/// Outcome of comparing the two sides of the Sheffer equivalence for one
/// operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivReport {
    pub excess: i64,
    /// `g(t)` of the candidate pair.
    pub g: Series,
    /// `phi(t)` of the candidate pair.
    pub phi: Series,
    /// The Stirling table equals the exponential Sheffer matrix of `(g, phi)`.
    pub matrix_condition: bool,
    /// `U_lambda(x^p) = g(lambda x^E) (x (1 + phi(lambda x^E)))^p` for every
    /// sample and every `p <= p_max`.
    pub action_condition: bool,
    /// The two conditions agree.
    pub equivalent: bool,
}

/// Candidate `(g, phi)` for `w = alpha X^(E+1) D + beta X^E` from the
/// integrated flow, as series in `t`.
fn first_order_pair(omega: &NormalForm, e: i64, trunc: usize) -> Result<Option<(Series, Series)>> {
    let e_us = e as usize;
    let alpha = omega.coeff(e_us + 1, 1, 0);
    let beta = omega.coeff(e_us, 0, 0);
    let first_order = !alpha.is_zero()
        && omega
            .terms()
            .keys()
            .all(|&(i, j, _)| (i, j) == (e_us + 1, 1) || (i, j) == (e_us, 0));
    if !first_order {
        return Ok(None);
    }
    if e == 0 {
        let phi = &Series::exp_linear(&alpha, trunc) - &Series::one(trunc);
        return Ok(Some((Series::exp_linear(&beta, trunc), phi)));
    }
    let base = &Series::one(trunc) - &Series::monomial(int(e) * &alpha, 1, trunc);
    let phi = &base.pow_rational(&rat(-1, e))? - &Series::one(trunc);
    let g = base.pow_rational(&(-&beta / (&alpha * int(e))))?;
    Ok(Some((g, phi)))
}

/// Candidate `(g, phi)` read from columns 0 and 1 of the table, assuming the
/// Sheffer form `S(n,k) = n! [t^n] g phi^k / k!`.
fn pair_from_columns(table: &GSTable, trunc: usize) -> Result<(Series, Series)> {
    let col = |k: usize| -> Series {
        Series::new((0..=trunc).map(|n| table.get(n, k) / factorial(n)).collect())
    };
    let g = col(0);
    if g.coeff(0).is_zero() {
        return Err(Error::NotUnit);
    }
    let phi = col(1).mul(&g.inverse()?);
    Ok((g, phi))
}

fn matrix_condition(table: &GSTable, g: &Series, phi: &Series, trunc: usize) -> Result<bool> {
    if !phi.coeff(0).is_zero() {
        return Ok(false);
    }
    let m = sheffer_matrix(g, phi, &RefSeq::Exponential, trunc + 1)?;
    for n in 0..=trunc {
        let width = table.row(n).len().max(n + 1);
        for k in 0..width {
            let expect = if k <= n { m.get(n, k) } else { Rational::zero() };
            if table.get(n, k) != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `sum_k S(n,k) p^(k falling)`, the eigenvalue-like weight of `x^p` in
/// `N(w^n) x^p = weight * x^(p + nE)`.
fn action_weight(table: &GSTable, n: usize, p: usize) -> Rational {
    table
        .row(n)
        .iter()
        .enumerate()
        .map(|(k, s)| s * falling(&int(p as i64), k))
        .sum()
}

fn action_condition(
    table: &GSTable,
    g: &Series,
    phi: &Series,
    samples: &[Rational],
    p_max: usize,
    trunc: usize,
) -> Result<bool> {
    let e = table.excess() as usize;
    for p in 0..=p_max.min(trunc) {
        let rhs_t = g.mul(&(&Series::one(trunc) + phi).pow_int(p as i64)?);
        if e == 0 {
            // Every term keeps the degree p; compare as series in lambda.
            let lhs: Vec<Rational> = (0..=trunc)
                .map(|n| action_weight(table, n, p) / factorial(n))
                .collect();
            if Series::new(lhs) != rhs_t {
                return Ok(false);
            }
            continue;
        }
        for lambda in samples {
            let mut lhs = Series::zero(trunc);
            let mut rhs = Series::zero(trunc);
            let mut n = 0;
            while p + n * e <= trunc {
                let deg = p + n * e;
                let w = action_weight(table, n, p) * powi(lambda, n as i64) / factorial(n);
                lhs = &lhs + &Series::monomial(w, deg, trunc);
                let r = rhs_t.coeff(n) * powi(lambda, n as i64);
                rhs = &rhs + &Series::monomial(r, deg, trunc);
                n += 1;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Tests the equivalence between "the Stirling table of `w` is an
/// exponential Sheffer matrix of `(g, phi)`" and "`exp(lambda w)` acts on
/// monomials as `x^p -> g(lambda x^E) (x (1 + phi(lambda x^E)))^p`".
///
/// For first-order `w = alpha X^(E+1) D + beta X^E` the candidate pair comes
/// from the integrated flow; otherwise it is read from the first two columns
/// of the table. The report passes when both conditions agree.
pub fn verify_equiv(omega: &NormalForm, samples: &[Rational], p_max: usize, trunc: usize) -> Result<EquivReport> {
    let omega = omega.collapse();
    let excess = omega.excess()?.ok_or(Error::NotUnit)?;
    if excess < 0 {
        return Err(Error::NegativeExcess(excess));
    }
    let table = gen_stirling(&omega, trunc)?;
    let (g, phi) = match first_order_pair(&omega, excess, trunc)? {
        Some(pair) => pair,
        None => pair_from_columns(&table, trunc)?,
    };
    let mc = matrix_condition(&table, &g, &phi, trunc)?;
    let ac = action_condition(&table, &g, &phi, samples, p_max, trunc)?;
    Ok(EquivReport {
        excess,
        g,
        phi,
        matrix_condition: mc,
        action_condition: ac,
        equivalent: mc == ac,
    })
}
