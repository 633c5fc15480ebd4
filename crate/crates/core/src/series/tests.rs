use super::*;
use crate::rational::{factorial, rat};
use proptest::prelude::*;

fn s(v: &[i64], n: usize) -> Series {
    Series::from_ints(v, n)
}

fn geometric(n: usize) -> Series {
    Series::geometric(&int(1), n)
}

/// `x / (1 - x)` computed by long division independently of `inverse`.
fn x_over_one_minus_x(n: usize) -> Series {
    let mut c = vec![0; n + 1];
    for v in c.iter_mut().skip(1) {
        *v = 1;
    }
    s(&c, n)
}

#[test]
fn ring_examples() {
    assert_eq!(&s(&[1, 1], 8) * &s(&[1, -1], 8), s(&[1, 0, -1], 8));
    assert_eq!(&s(&[1, -1], 8) * &geometric(8), Series::one(8));
    assert_eq!(&x_over_one_minus_x(8) * &s(&[1, -1], 8), Series::x(8));
    let mixed = &s(&[1, 2, 3], 5) + &s(&[1], 2);
    assert_eq!(mixed.trunc(), 2);
}

#[test]
fn order_examples() {
    assert_eq!(Series::zero(8).order(), None);
    assert_eq!(s(&[0, 0, 0, 1, 0, 1], 8).order(), Some(3));
    assert_eq!(s(&[1, -1], 8).order(), Some(0));
}

#[test]
fn inverse_examples() {
    assert_eq!(s(&[1, -1], 10).inverse().unwrap(), geometric(10));
    assert_eq!(s(&[1, 1], 6).inverse().unwrap(), s(&[1, -1, 1, -1, 1, -1, 1], 6));
    let e = Series::exp_linear(&int(1), 3);
    assert_eq!(e.inverse().unwrap(), Series::exp_linear(&int(-1), 3));
    assert_eq!(Series::x(4).inverse(), Err(Error::NonUnit));
}

#[test]
fn compose_examples() {
    let f = s(&[3, 1, 4, 1, 5], 6);
    assert_eq!(f.compose(&Series::x(6)).unwrap(), f);
    let p = x_over_one_minus_x(12);
    let q = s(&[0, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1], 12);
    assert_eq!(p.compose(&q).unwrap(), Series::x(12));
    let r = geometric(6).compose(&x_over_one_minus_x(6)).unwrap();
    assert_eq!(r, s(&[1, 1, 2, 4, 8, 16, 32], 6));
    assert_eq!(f.compose(&f), Err(Error::CompositionDomain));
}

#[test]
fn revert_examples() {
    let q = s(&[0, 1, -1, 1, -1, 1, -1, 1, -1], 8);
    assert_eq!(x_over_one_minus_x(8).revert().unwrap(), q);
    assert_eq!(Series::x(5).revert().unwrap(), Series::x(5));
    let expm1 = &Series::exp_linear(&int(1), 10) - &Series::one(10);
    let ln1p: Vec<Rational> = (0..=10)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                rat(if k % 2 == 1 { 1 } else { -1 }, k as i64)
            }
        })
        .collect();
    assert_eq!(expm1.revert().unwrap(), Series::new(ln1p));
    assert_eq!(s(&[1, 1], 4).revert(), Err(Error::NotProper));
    assert_eq!(s(&[0, 0, 1], 4).revert(), Err(Error::NotProper));
}

#[test]
fn pow_rational_examples() {
    let base = s(&[1, 0, -2], 6);
    let h = base.pow_rational(&rat(-1, 2)).unwrap();
    let expect = [int(1), int(0), int(1), int(0), rat(3, 2), int(0), rat(5, 2)];
    assert_eq!(h.coeffs(), &expect);
    let egf: Vec<Rational> = [2, 4, 6].iter().map(|&n| h.coefficient(n, &RefSeq::Exponential).unwrap()).collect();
    assert_eq!(egf, vec![int(2), int(36), int(1800)]);
    assert_eq!(base.pow_rational(&int(0)).unwrap(), Series::one(6));
    let root = geometric(12).pow_rational(&rat(1, 2)).unwrap();
    assert_eq!(&root * &root, geometric(12));
    assert_eq!(s(&[2, 1], 3).pow_rational(&rat(1, 2)), Err(Error::BaseNotUnit1));
}

/// The generalized binomial series `sum_k C(rho, k) (f - 1)^k`.
fn binomial_pow(f: &Series, rho: &Rational) -> Series {
    let n = f.trunc();
    let d = f - &Series::one(n);
    let mut acc = Series::zero(n);
    let mut p = Series::one(n);
    for k in 0..=n {
        acc = &acc + &p.scale(&rational::binomial(rho, k));
        p = p.mul(&d);
    }
    acc
}

#[test]
fn pow_recurrence_matches_binomial_series() {
    let f = s(&[1, 3, -2, 5, 0, 1, 7], 14);
    for rho in [rat(1, 3), rat(-5, 2), int(4), rat(7, 11)] {
        assert_eq!(f.pow_rational(&rho).unwrap(), binomial_pow(&f, &rho));
    }
}

#[test]
fn exp_log_examples() {
    assert_eq!(Series::x(6).exp().unwrap(), Series::exp_linear(&int(1), 6));
    let log = s(&[1, 1], 5).log().unwrap();
    assert_eq!(log.coeffs(), &[int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)]);
    assert_eq!(geometric(9).log().unwrap().exp().unwrap(), geometric(9));
    assert_eq!(Series::one(3).exp(), Err(Error::ExpDomain));
    assert_eq!(s(&[2], 3).log(), Err(Error::LogDomain));
}

#[test]
fn coefficient_examples() {
    let e = Series::exp_linear(&int(1), 8);
    assert_eq!(e.coefficient(5, &RefSeq::Exponential).unwrap(), int(1));
    assert_eq!(geometric(8).coefficient(7, &RefSeq::Ordinary).unwrap(), int(1));
    let f = s(&[1, -3], 5).pow_rational(&rat(-1, 3)).unwrap();
    assert_eq!(f.coefficient(3, &RefSeq::Exponential).unwrap(), int(28));
    assert_eq!(f.coefficient(6, &RefSeq::Ordinary), Err(Error::OutOfRange { index: 6, trunc: 5 }));
}

#[test]
fn derivative_and_integral() {
    let f = s(&[5, 1, 3, 2], 3);
    assert_eq!(f.derivative(), s(&[1, 6, 6], 2));
    assert_eq!(f.derivative().integral(), &f - &s(&[5], 3));
    assert_eq!(f.integral().trunc(), 4);
}

#[test]
fn agreement_and_distance() {
    let a = s(&[1, 2, 3, 4], 3);
    let b = s(&[1, 2, 3], 2);
    assert_eq!(a.agreement(&b), Agreement::EqualToOrder(2));
    let c = s(&[1, 2, 0, 4], 3);
    assert_eq!(a.agreement(&c), Agreement::DifferAt(2));
    assert_eq!(a.distance(&c), rat(1, 4));
    assert_eq!(a.distance(&a), Rational::zero());
}

#[test]
fn refseq_validation() {
    assert!(RefSeq::custom(vec![int(1), int(2), int(6)]).is_ok());
    assert!(RefSeq::custom(vec![int(2)]).is_err());
    assert!(RefSeq::custom(vec![int(1), int(0)]).is_err());
    assert_eq!(RefSeq::Exponential.term(5).unwrap(), factorial(5));
}

#[test]
fn series_json_round_trip() {
    let f = Series::new(vec![int(1), rat(-1, 2), int(0)]);
    let text = serde_json::to_string(&f).unwrap();
    assert_eq!(text, r#"{"trunc":2,"coeffs":["1","-1/2","0"]}"#);
    let back: Series = serde_json::from_str(&text).unwrap();
    assert_eq!(back.coeffs(), f.coeffs());
    assert!(serde_json::from_str::<Series>(r#"{"trunc":3,"coeffs":["1"]}"#).is_err());
}

#[test]
fn puiseux_mu_examples() {
    let u = PuiseuxSeries::from_series(&s(&[1, 1], 3));
    let v = u.mu_action(&rat(1, 2));
    assert_eq!(v.ram(), 2);
    assert_eq!(v.coeff_at(&rat(1, 2)), Some(int(1)));
    assert_eq!(v.coeff_at(&rat(3, 2)), Some(int(1)));
    assert_eq!(v.coeff_at(&int(1)), Some(int(0)));
    assert_eq!(u.mu_action(&int(0)), u);
    let w = PuiseuxSeries::from_series(&s(&[0, 1, 1], 3)).mu_action(&int(-1));
    assert_eq!(w, PuiseuxSeries::from_series(&s(&[1, 1], 2)));
    assert_eq!(v.mu_inverse(&rat(1, 2)).normalize().coeffs(), u.coeffs());
}

#[test]
fn puiseux_normalize_and_json() {
    let u = PuiseuxSeries::new(4, 2, vec![int(1), int(0), int(3), int(0)]).unwrap();
    let n = u.normalize();
    assert_eq!((n.ram(), n.lo(), n.coeffs().len()), (2, 1, 2));
    assert_eq!(n, u);
    let text = serde_json::to_string(&n).unwrap();
    assert_eq!(text, r#"{"ram":2,"lo":1,"coeffs":["1","3"]}"#);
    let back: PuiseuxSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(back, n);
}

#[test]
fn puiseux_substitution_matches_series_compose() {
    // For integral exponents U(xg) is ordinary composition with x g.
    let u = s(&[2, -1, 3, 0, 5], 8);
    let g = s(&[1, 1, 1, 1, 1, 1, 1, 1, 1], 8);
    let xg = Series::x(8).mul(&g);
    let direct = u.compose(&xg).unwrap();
    let via = PuiseuxSeries::from_series(&u).substitute_xg(&g).unwrap();
    assert_eq!(via, PuiseuxSeries::from_series(&direct));
}

fn arb_series(n: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec((-9i64..=9, 1i64..=4), n + 1)
        .prop_map(|v| Series::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

fn arb_proper(n: usize) -> impl Strategy<Value = Series> {
    (arb_series(n), 1i64..=5).prop_map(|(mut f, c)| {
        f.coeffs[0] = Rational::zero();
        f.coeffs[1] = int(c);
        f
    })
}

fn arb_unit1(n: usize) -> impl Strategy<Value = Series> {
    arb_series(n).prop_map(|mut f| {
        f.coeffs[0] = Rational::one();
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms(a in arb_series(16), b in arb_series(16), c in arb_series(16)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
    }

    #[test]
    fn compose_is_associative(f in arb_series(16), g in arb_proper(16), h in arb_proper(16)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn power_table_matches_horner(f in arb_series(14), g in arb_proper(12)) {
        prop_assert_eq!(g.power_table().unwrap().compose(&f), f.compose(&g).unwrap());
    }

    #[test]
    fn revert_is_two_sided(f in arb_proper(12)) {
        let r = f.revert().unwrap();
        prop_assert_eq!(f.compose(&r).unwrap(), Series::x(12));
        prop_assert_eq!(r.compose(&f).unwrap(), Series::x(12));
    }

    #[test]
    fn pow_rational_consistent(f in arb_unit1(10), p in -4i64..=4, q in 1i64..=4) {
        let h = f.pow_rational(&rat(p, q)).unwrap();
        prop_assert_eq!(h.pow_int(q).unwrap(), f.pow_int(p).unwrap());
    }

    #[test]
    fn log_exp_round_trip(f in arb_proper(10)) {
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
        prop_assert_eq!(f.exp().unwrap().derivative(), f.derivative().mul(&f.exp().unwrap()));
    }

    #[test]
    fn coefficient_is_linear(a in arb_series(8), b in arb_series(8), k in -5i64..=5, n in 0usize..=8) {
        let c = RefSeq::Exponential;
        let lhs = (&a.scale(&int(k)) + &b).coefficient(n, &c).unwrap();
        let rhs = int(k) * a.coefficient(n, &c).unwrap() + b.coefficient(n, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mu_is_additive(u in arb_series(6), p1 in -6i64..=6, q1 in 1i64..=4, p2 in -6i64..=6, q2 in 1i64..=4) {
        let u = PuiseuxSeries::from_series(&u);
        let (r1, r2) = (rat(p1, q1), rat(p2, q2));
        prop_assert_eq!(u.mu_action(&r2).mu_action(&r1), u.mu_action(&(&r1 + &r2)));
        prop_assert_eq!(u.mu_action(&r1).mu_inverse(&r1), u);
    }
}
