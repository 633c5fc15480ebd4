//! Standard arrays and the classical subgroups.

use super::RiordanArray;
use crate::error::Result;
use crate::rational::{int, Rational};
use crate::series::{RefSeq, Series};

/// `(1 / (1 - x), x / (1 - x))`.
pub fn pascal(trunc: usize) -> RiordanArray {
    pascal_power(1, trunc)
}

/// `P^m = (1 / (1 - m x), x / (1 - m x))`.
pub fn pascal_power(m: i64, trunc: usize) -> RiordanArray {
    let g = Series::geometric(&int(m), trunc);
    let f = Series::x(trunc).mul(&g);
    RiordanArray::make(g, f, RefSeq::Ordinary).expect("valid pair")
}

/// Exponential Pascal `(e^x, x)`.
pub fn pascal_exp(trunc: usize) -> RiordanArray {
    appell(&Series::exp_linear(&int(1), trunc), RefSeq::Exponential).expect("valid pair")
}

/// `(1, e^x - 1)`, exponential.
pub fn stirling2(trunc: usize) -> RiordanArray {
    let f = &Series::exp_linear(&int(1), trunc) - &Series::one(trunc);
    lagrange(&f, RefSeq::Exponential).expect("valid pair")
}

/// `(1, ln(1 + x))`, exponential.
pub fn stirling1(trunc: usize) -> RiordanArray {
    let f = Series::from_ints(&[1, 1], trunc).log().expect("unit constant term");
    lagrange(&f, RefSeq::Exponential).expect("valid pair")
}

pub fn identity(trunc: usize, c: RefSeq) -> RiordanArray {
    RiordanArray::identity(trunc, c)
}

/// Appell subgroup element `(g, x)`.
pub fn appell(g: &Series, c: RefSeq) -> Result<RiordanArray> {
    RiordanArray::make(g.clone(), Series::x(g.trunc()), c)
}

/// Bell subgroup element `(g, x g)`.
pub fn bell(g: &Series, c: RefSeq) -> Result<RiordanArray> {
    RiordanArray::make(g.clone(), Series::x(g.trunc()).mul(g), c)
}

/// Lagrange subgroup element `(1, f)`.
pub fn lagrange(f: &Series, c: RefSeq) -> Result<RiordanArray> {
    RiordanArray::make(Series::one(f.trunc()), f.clone(), c)
}

/// `(g^rho, x g)` for `g(0) = 1`.
pub fn power_rho(g: &Series, rho: &Rational, c: RefSeq) -> Result<RiordanArray> {
    RiordanArray::make(g.pow_rational(rho)?, Series::x(g.trunc()).mul(g), c)
}
