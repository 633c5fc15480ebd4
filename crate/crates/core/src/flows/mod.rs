//! One-parameter groups `exp(lambda (q d/dx + v))` integrated as
//! substitutions with prefunction, `f -> g (f o s)`.

pub mod interp;
mod sheffer;

pub use sheffer::{sheffer_matrix, verify_equiv, EquivReport};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, int, powi, rat, Rational};
use crate::series::{PowerTable, Series};

/// The operator `q d/dx + v`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldOp {
    pub q: Series,
    pub v: Series,
    pub monomial: Option<MonomialField>,
}

/// `x^n d/dx + sign * r * x^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialField {
    pub n: usize,
    pub r: Rational,
    pub negative: bool,
}

impl FieldOp {
    pub fn new(q: Series, v: Series) -> Self {
        FieldOp { q, v, monomial: None }
    }

    pub fn monomial(n: usize, r: Rational, negative: bool, trunc: usize) -> Self {
        let q = Series::monomial(Rational::one(), n, trunc);
        let c = if negative { -r.clone() } else { r.clone() };
        let v = match n {
            0 => Series::zero(trunc),
            _ => Series::monomial(c, n - 1, trunc),
        };
        FieldOp {
            q,
            v,
            monomial: Some(MonomialField { n, r, negative }),
        }
    }

    /// `m x^(n+1) d/dx + theta x^n`: the bracket of `x^(k+1) d/dx + r x^k`
    /// with `x^(l+1) d/dx + s x^l`, where `n = k + l`, `m = l - k` and `theta`
    /// depends on the variant.
    pub fn bracket_of_monomials(k: usize, l: usize, r: &Rational, s: &Rational, variant: Variant, trunc: usize) -> Self {
        let n = k + l;
        let m = int(l as i64 - k as i64);
        FieldOp::new(
            Series::monomial(m, n + 1, trunc),
            Series::monomial(variant.theta(k, l, r, s), n, trunc),
        )
    }

    pub fn trunc(&self) -> usize {
        self.q.trunc().min(self.v.trunc())
    }

    /// `(q d/dx + v) f`. Exact to `min(trunc)` whenever `q(0) = 0`.
    pub fn apply(&self, f: &Series) -> Series {
        &mul_derivative(&self.q, f) + &self.v.mul(f)
    }
}

/// `a b'`, keeping full precision when `a(0) = 0`:
/// `(a b')_m = sum_k a_k (m - k + 1) b_(m-k+1)`.
fn mul_derivative(a: &Series, b: &Series) -> Series {
    let full = a.trunc().min(b.trunc());
    let n = if a.coeff(0).is_zero() { full } else { full.saturating_sub(1) };
    let coeffs = (0..=n)
        .map(|m| {
            (0..=m)
                .filter_map(|k| {
                    let idx = m + 1 - k;
                    let ak = a.coeff(k);
                    (idx <= b.trunc() && !ak.is_zero()).then(|| ak * int(idx as i64) * b.coeff(idx))
                })
                .sum()
        })
        .collect();
    Series::new(coeffs)
}

/// Sign of the scalar part of a bracket: `theta = s l - r k`, or
/// `-(r k + s l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

impl Variant {
    pub fn theta(self, k: usize, l: usize, r: &Rational, s: &Rational) -> Rational {
        let (k, l) = (int(k as i64), int(l as i64));
        match self {
            Variant::Plus => s * &l - r * &k,
            Variant::Minus => -(r * &k + s * &l),
        }
    }
}

/// The transformation `f -> g (f o s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    pub s: Series,
    pub g: Series,
    pub lambda: Rational,
}

impl Flow {
    pub fn trivial(lambda: Rational, trunc: usize) -> Self {
        Flow {
            s: Series::x(trunc),
            g: Series::one(trunc),
            lambda,
        }
    }

    pub fn act(&self, f: &Series) -> Result<Series> {
        Ok(self.g.mul(&f.compose(&self.s)?))
    }
}

/// `s(x) = x (1 - (n-1) lambda x^(n-1))^(-1/(n-1))`, the flow of `x^n d/dx`.
pub fn substitution_factor(n: i64, lambda: &Rational, trunc: usize) -> Result<Series> {
    if n < 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let d = (n - 1) as usize;
    let base = &Series::one(trunc) - &Series::monomial(int(d as i64) * lambda, d, trunc);
    Ok(Series::x(trunc).mul(&base.pow_rational(&rat(-1, d as i64))?))
}

/// Flows of `d/dx`, `x d/dx` and `x^2 d/dx` in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// `f(x + lambda)`.
    Translation(Rational),
    /// `f(t x)`; the scale `t = e^lambda` is given directly to stay in Q.
    Homothety(Rational),
    /// `f(x / (1 - lambda x))`.
    Homography(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    /// Coefficients of an exact polynomial.
    Polynomial(Vec<Rational>),
    Series(Series),
}

/// Applies a closed-form flow; the result is cut at `trunc`.
pub fn closed_form_flow(kind: &ClosedForm, f: &Operand, trunc: usize) -> Result<Series> {
    match (kind, f) {
        (ClosedForm::Translation(_), Operand::Series(_)) => Err(Error::NotPolynomial),
        (ClosedForm::Translation(lambda), Operand::Polynomial(p)) => {
            let mut out = vec![Rational::zero(); p.len()];
            for (m, c) in p.iter().enumerate() {
                for (j, o) in out.iter_mut().enumerate().take(m + 1) {
                    *o += c * binomial(&int(m as i64), j) * powi(lambda, (m - j) as i64);
                }
            }
            Ok(Series::from_coeffs(&out, trunc))
        }
        (ClosedForm::Homothety(t), op) => {
            let s = operand_series(op, trunc);
            let scaled: Vec<Rational> = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(m, c)| c * powi(t, m as i64))
                .collect();
            Ok(Series::new(scaled))
        }
        (ClosedForm::Homography(lambda), op) => {
            let s = operand_series(op, trunc);
            s.compose(&substitution_factor(2, lambda, s.trunc())?)
        }
    }
}

fn operand_series(op: &Operand, trunc: usize) -> Series {
    match op {
        Operand::Polynomial(p) => Series::from_coeffs(p, trunc),
        Operand::Series(s) => s.truncate(trunc),
    }
}

/// `sum_(j <= N) lambda^j / j! (q d/dx + v)^j f`. Needs `ord(q) >= 2` and
/// `ord(v) >= 1`, so that each application raises the order and the sum is
/// exact at truncation `N`.
pub fn exp_field_action(op: &FieldOp, lambda: &Rational, f: &Series) -> Result<Series> {
    let raises = |s: &Series, min: usize| s.order().is_none_or(|o| o >= min);
    if !raises(&op.q, 2) || !raises(&op.v, 1) {
        return Err(Error::DegreeTooLow);
    }
    let n = f.trunc().min(op.trunc());
    let mut term = f.truncate(n);
    let mut acc = term.clone();
    for j in 1..=n {
        term = op.apply(&term).scale(&(lambda / int(j as i64)));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Flow of `x^n d/dx + r x^(n-1)`: `s` from [`substitution_factor`] and
/// `g = (u o s) / u` with `u = x^r`, i.e. `g = (s / x)^r`.
pub fn conjugacy_prefunction(n: i64, r: &Rational, lambda: &Rational, trunc: usize) -> Result<Flow> {
    // One extra order so that s / x is still known to x^trunc.
    let s = substitution_factor(n, lambda, trunc + 1)?;
    let g = s.shift_down(1)?.pow_rational(r)?;
    Ok(Flow {
        s: s.truncate(trunc),
        g,
        lambda: lambda.clone(),
    })
}

/// Flow of the bracket `m x^(n+1) d/dx + theta x^n` with `n = k + l`,
/// `m = l - k`. One formula covers every sign of `m` and `theta`:
/// `g = (1 - m n lambda x^n)^(-theta/(m n))`, `s = x (1 - m n lambda x^n)^(-1/n)`.
/// `k = l` gives the trivial flow.
pub fn prefunction_general(
    k: usize,
    l: usize,
    r: &Rational,
    s: &Rational,
    lambda: &Rational,
    variant: Variant,
    trunc: usize,
) -> Result<Flow> {
    if k == l {
        return Ok(Flow::trivial(lambda.clone(), trunc));
    }
    let n = (k + l) as i64;
    let m = l as i64 - k as i64;
    let theta = variant.theta(k, l, r, s);
    let base = &Series::one(trunc) - &Series::monomial(int(m * n) * lambda, n as usize, trunc);
    let g = base.pow_rational(&(-theta / int(m * n)))?;
    let s = Series::x(trunc).mul(&base.pow_rational(&rat(-1, n))?);
    Ok(Flow {
        s,
        g,
        lambda: lambda.clone(),
    })
}

/// `[q1 d + v1, q2 d + v2] = (q1 q2' - q2 q1') d + (q1 v2' - q2 v1')`.
pub fn field_bracket(a: &FieldOp, b: &FieldOp) -> FieldOp {
    let q = &mul_derivative(&a.q, &b.q) - &mul_derivative(&b.q, &a.q);
    let v = &mul_derivative(&a.q, &b.v) - &mul_derivative(&b.q, &a.v);
    FieldOp::new(q, v)
}

/// `1, 1/2, ..., 1/count`.
pub fn lambda_samples(count: usize) -> Vec<Rational> {
    (1..=count as i64).map(|i| rat(1, i)).collect()
}

/// Checks `s_(l2) o s_(l1) = s_(l1+l2)` and
/// `g_(l1) (g_(l2) o s_(l1)) = g_(l1+l2)` on every ordered pair of samples.
pub fn check_group_law<F>(family: F, samples: &[Rational]) -> Result<bool>
where
    F: Fn(&Rational) -> Result<Flow>,
{
    let flows: Vec<Flow> = samples.iter().map(&family).collect::<Result<_>>()?;
    let tables: Vec<PowerTable> = flows.iter().map(|f| f.s.power_table()).collect::<Result<_>>()?;
    for i in 0..flows.len() {
        for j in i..flows.len() {
            let sum = family(&(&flows[i].lambda + &flows[j].lambda))?;
            for (x, y) in [(i, j), (j, i)] {
                let (inner, outer) = (&tables[x], &flows[y]);
                if inner.compose(&outer.s) != sum.s {
                    return Ok(false);
                }
                if flows[x].g.mul(&inner.compose(&outer.g)) != sum.g {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `s(x)^n (1 - n lambda x^n) = x^n` for the flow of `x^(n+1) d/dx`.
pub fn homography_conjugation_check(n: usize, lambda: &Rational, trunc: usize) -> Result<bool> {
    let s = substitution_factor(n as i64 + 1, lambda, trunc)?;
    let lhs = s.pow_int(n as i64)?.mul(
        &(&Series::one(trunc) - &Series::monomial(int(n as i64) * lambda, n, trunc)),
    );
    Ok(lhs == Series::monomial(Rational::one(), n, trunc))
}

/// Recovers `(q d + v) f` as the coefficient of `lambda^1` in
/// `exp_field_action`, by exact interpolation over `trunc + 1` samples.
pub fn tangent_field(op: &FieldOp, f: &Series) -> Result<Series> {
    let n = f.trunc().min(op.trunc());
    let xs = lambda_samples(n + 1);
    let images: Vec<Series> = xs
        .iter()
        .map(|l| exp_field_action(op, l, f))
        .collect::<Result<_>>()?;
    let coeffs = (0..=n)
        .map(|m| {
            let ys: Vec<Rational> = images.iter().map(|s| s.coeff(m).clone()).collect();
            interp::interpolate(&xs, &ys).get(1).cloned().unwrap_or_else(Rational::zero)
        })
        .collect();
    Ok(Series::new(coeffs))
}
