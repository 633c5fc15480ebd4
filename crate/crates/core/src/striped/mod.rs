//! Striped Riordan arrays `L = (g^rho, x g)` with
//! `g(x) = (1 - mu n lambda x^n)^(-1/n)`, and the products on them.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::Variant;
use crate::rational::{self, int, rat, Rational};
use crate::riordan::RiordanArray;
use crate::series::{PuiseuxSeries, RefSeq, Series};


/// The element `L_{mu n, rho}` for a fixed `lambda`, kept symbolically so that
/// `mu` may be any rational.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StripedElement {
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub rho: Rational,
    #[serde(with = "rational::serde_str")]
    pub mu: Rational,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
}

impl StripedElement {
    pub fn new(n: usize, rho: Rational, mu: Rational, lambda: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("stripe n must be positive".into()));
        }
        Ok(StripedElement { n, rho, mu, lambda })
    }

    /// `(1, x)`, written in stripe `n`.
    pub fn identity(n: usize, lambda: Rational) -> Self {
        StripedElement {
            n: n.max(1),
            rho: Rational::zero(),
            mu: Rational::zero(),
            lambda,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mu.is_zero() || self.lambda.is_zero()
    }

    /// `1 - mu n lambda x^n`.
    fn base(&self, trunc: usize) -> Series {
        let c = &self.mu * int(self.n as i64) * &self.lambda;
        &Series::one(trunc) - &Series::monomial(c, self.n, trunc)
    }

    /// `g_{mu n}` itself.
    pub fn substitution_prefactor(&self, trunc: usize) -> Series {
        self.base(trunc)
            .pow_rational(&rat(-1, self.n as i64))
            .expect("base has constant term 1")
    }

    /// `(g^rho, x g)` to order `trunc`.
    pub fn materialize(&self, trunc: usize, c: RefSeq) -> Result<RiordanArray> {
        let g = self.substitution_prefactor(trunc);
        let pre = self.base(trunc).pow_rational(&(-&self.rho / int(self.n as i64)))?;
        RiordanArray::make(pre, Series::x(trunc).mul(&g), c)
    }

    /// `L^m`, which only rescales `mu`.
    pub fn comp_power(&self, m: i64) -> Self {
        StripedElement {
            mu: &self.mu * int(m),
            ..self.clone()
        }
    }

    pub fn inverse(&self) -> Self {
        self.comp_power(-1)
    }

    /// With `rho = p/q` and `h = g_{mu n}`: `(h^rho)^q = h^p` and
    /// `h^n (1 - mu n lambda x^n) = 1`, both computed by integer powers only.
    pub fn power_law_holds(&self, trunc: usize) -> Result<bool> {
        let h = self.substitution_prefactor(trunc);
        let pre = self.base(trunc).pow_rational(&(-&self.rho / int(self.n as i64)))?;
        let (Some(p), Some(q)) = (self.rho.numer().to_i64(), self.rho.denom().to_i64()) else {
            return Err(Error::Invalid("rho out of range".into()));
        };
        let first = pre.pow_int(q)? == h.pow_int(p)?;
        let second = h.pow_int(self.n as i64)?.mul(&self.base(trunc)) == Series::one(trunc);
        Ok(first && second)
    }
}

/// Equality of the denoted arrays: every identity is `(1, x)`.
impl PartialEq for StripedElement {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_identity(), other.is_identity()) {
            (true, true) => true,
            (false, false) => {
                self.n == other.n && self.rho == other.rho && &self.mu * &self.lambda == &other.mu * &other.lambda
            }
            _ => false,
        }
    }
}

/// `phi(r, s) = (s l - r k) / (l - k)` for stripes `k != l`.
pub fn phi(k: usize, r: &Rational, l: usize, s: &Rational) -> Option<Rational> {
    if k == l {
        return None;
    }
    let (kq, lq) = (int(k as i64), int(l as i64));
    Some((s * &lq - r * &kq) / (&lq - &kq))
}

/// The quasigroup product: `n = k + l`, `rho = phi(r, s)`,
/// `mu = sigma tau (l - k)`. Equal stripes give the identity.
pub fn qmul(a: &StripedElement, b: &StripedElement) -> Result<StripedElement> {
    if a.lambda != b.lambda {
        return Err(Error::LambdaMismatch);
    }
    let n = a.n + b.n;
    let Some(rho) = phi(a.n, &a.rho, b.n, &b.rho) else {
        return Ok(StripedElement::identity(n, a.lambda.clone()));
    };
    let m = int(b.n as i64) - int(a.n as i64);
    Ok(StripedElement {
        n,
        rho,
        mu: &a.mu * &b.mu * m,
        lambda: a.lambda.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakAssocReport {
    /// `L1 * (L2 * L3)`.
    pub right_nested: StripedElement,
    /// `(L1 * L2) * L3`.
    pub left_nested: StripedElement,
    /// The two nestings denote different arrays.
    pub cond_i: bool,
    /// Both nestings sit in stripe `j + k + l` with the predicted exponents.
    pub cond_ii: bool,
    /// The predicted exponents differ.
    pub cond_iii: bool,
}

pub fn weak_assoc_witness(a: &StripedElement, b: &StripedElement, c: &StripedElement) -> Result<WeakAssocReport> {
    let right_nested = qmul(a, &qmul(b, c)?)?;
    let left_nested = qmul(&qmul(a, b)?, c)?;
    let stripe = a.n + b.n + c.n;
    let inner_r = phi(b.n, &b.rho, c.n, &c.rho);
    let inner_l = phi(a.n, &a.rho, b.n, &b.rho);
    let exp_r = inner_r.and_then(|e| phi(a.n, &a.rho, b.n + c.n, &e));
    let exp_l = inner_l.and_then(|e| phi(a.n + b.n, &e, c.n, &c.rho));
    let lands = |x: &StripedElement, e: &Option<Rational>| {
        x.is_identity() || (x.n == stripe && e.as_ref() == Some(&x.rho))
    };
    Ok(WeakAssocReport {
        cond_i: right_nested != left_nested,
        cond_ii: lands(&right_nested, &exp_r) && lands(&left_nested, &exp_l),
        cond_iii: exp_r != exp_l,
        right_nested,
        left_nested,
    })
}

/// The class `G(n, rho; mu)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GClass {
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub rho: Rational,
    #[serde(with = "rational::serde_str")]
    pub mu: Rational,
}

impl GClass {
    pub fn identity() -> Self {
        GClass {
            n: 0,
            rho: Rational::zero(),
            mu: Rational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mu.is_zero()
    }
}

/// The semigroup product of classes. A vanishing `sigma tau (l - k)`
/// collapses to the identity class.
pub fn sgmul(a: &GClass, b: &GClass) -> GClass {
    let m = int(b.n as i64) - int(a.n as i64);
    let mu = &a.mu * &b.mu * &m;
    if mu.is_zero() {
        return GClass::identity();
    }
    GClass {
        n: a.n + b.n,
        rho: phi(a.n, &a.rho, b.n, &b.rho).expect("stripes differ"),
        mu,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssocReport {
    pub right_nested: GClass,
    pub left_nested: GClass,
    pub associative: bool,
}

/// Computes both nestings of `sgmul`; associativity is reported, not assumed.
pub fn sg_assoc_report(a: &GClass, b: &GClass, c: &GClass) -> AssocReport {
    let right_nested = sgmul(a, &sgmul(b, c));
    let left_nested = sgmul(&sgmul(a, b), c);
    AssocReport {
        associative: right_nested == left_nested,
        right_nested,
        left_nested,
    }
}

/// The element integrating the bracket `[x^k (x d/dx + r), x^l (x d/dx + s)]`
/// (or its minus variant): `n = k + l`, `mu = l - k`, `rho = theta / (l - k)`.
pub fn from_bracket(
    k: usize,
    l: usize,
    r: &Rational,
    s: &Rational,
    lambda: &Rational,
    variant: Variant,
) -> Result<StripedElement> {
    if k + l == 0 {
        return Err(Error::Invalid("k + l must be positive".into()));
    }
    if k == l {
        return Ok(StripedElement::identity(k + l, lambda.clone()));
    }
    let m = int(l as i64) - int(k as i64);
    StripedElement::new(k + l, variant.theta(k, l, r, s) / &m, m, lambda.clone())
}

pub fn stripe_check(t: &RiordanArray, nu: usize) -> Result<bool> {
    if nu == 0 {
        return Err(Error::Invalid("stripe width must be positive".into()));
    }
    t.is_striped(nu)
}

/// Compares `mu_{rho1}^{-1}(g^{rho2} V(x g))` with `V = mu_{rho1}(U)` against
/// `g^{rho1 + rho2} U(x g)`, both to order `trunc`.
pub fn automorphy_check(rho1: &Rational, rho2: &Rational, g: &Series, u: &PuiseuxSeries, trunc: usize) -> Result<bool> {
    if !g.coeff(0).is_one() {
        return Err(Error::BaseNotUnit1);
    }
    let g = g.truncate(trunc);
    let v = u.mu_action(rho1);
    let lhs = v
        .substitute_xg(&g)?
        .mul_series(&g.pow_rational(rho2)?)
        .mu_inverse(rho1);
    let rhs = u.substitute_xg(&g)?.mul_series(&g.pow_rational(&(rho1 + rho2))?);
    Ok(lhs == rhs)
}
