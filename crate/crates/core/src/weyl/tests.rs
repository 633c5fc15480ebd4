use super::rewrite::normal_order_by_rewriting;
use super::*;
use crate::rational::{int, rat};
use crate::series::RefSeq;
use num_traits::Zero;
use proptest::prelude::*;

fn nf(terms: &[((usize, usize, usize), i64)], mode: Mode) -> NormalForm {
    NormalForm::from_terms(terms.iter().map(|&(k, c)| (k, int(c))), mode)
}

/// Classical Stirling numbers of the second kind by their recurrence.
fn stirling2(n_max: usize) -> Vec<Vec<i64>> {
    let mut t = vec![vec![0i64; n_max + 1]; n_max + 1];
    t[0][0] = 1;
    for n in 1..=n_max {
        for k in 1..=n {
            t[n][k] = k as i64 * t[n - 1][k] + t[n - 1][k - 1];
        }
    }
    t
}

#[test]
fn parse_word_examples() {
    use Letter::*;
    let w = parse_word("a+^2 a").unwrap();
    assert_eq!(w.letters(), &[B, B, A]);
    assert_eq!(w.excess(), 1);
    assert_eq!(parse_word("a a+").unwrap().letters(), &[A, B]);
    assert_eq!(parse_word("a+^3 a c^2").unwrap().letters(), &[B, B, B, A, C, C]);
    assert_eq!(parse_word("(b a)").unwrap().letters(), &[B, A]);
    assert!(parse_word("").unwrap().is_empty());
    assert_eq!(parse_word("a q"), Err(crate::Error::Parse { pos: 2, msg: "unexpected character 'q'".into() }));
    assert!(matches!(parse_word("a^0"), Err(crate::Error::Parse { pos: 2, .. })));
}

#[test]
fn parse_omega_examples() {
    assert_eq!(parse_omega("X2D").unwrap(), NormalForm::xd(2, 1));
    assert_eq!(parse_omega("X3D2").unwrap(), NormalForm::xd(3, 2));
    assert_eq!(parse_omega("XD + 2X").unwrap(), nf(&[((1, 1, 0), 1), ((1, 0, 0), 2)], Mode::Hw));
    assert_eq!(parse_omega("DX").unwrap(), nf(&[((1, 1, 0), 1), ((0, 0, 0), 1)], Mode::Hw));
    assert_eq!(parse_omega("X^2 D - 1/2").unwrap(), NormalForm::xd(2, 1).sub(&NormalForm::identity(Mode::Hw).scale(&rat(1, 2))));
    assert!(parse_omega("").is_err());
    assert!(parse_omega("X +").is_err());
    assert!(parse_omega("XQ").is_err());
}

#[test]
fn normal_order_examples() {
    let ab = parse_word("a a+").unwrap();
    assert_eq!(ab.normal_order(Mode::Hw), nf(&[((1, 1, 0), 1), ((0, 0, 0), 1)], Mode::Hw));
    let abb = parse_word("a a+ a+").unwrap();
    assert_eq!(abb.normal_order(Mode::Hw), nf(&[((2, 1, 0), 1), ((1, 0, 0), 2)], Mode::Hw));
    assert_eq!(ab.normal_order(Mode::Env), nf(&[((1, 1, 0), 1), ((0, 0, 1), 1)], Mode::Env));
    assert_eq!(normal_order_by_rewriting(&abb, Mode::Hw), abb.normal_order(Mode::Hw));
}

#[test]
fn display_examples() {
    let show = |t: &str| parse_word(t).unwrap().normal_order(Mode::Hw).to_string();
    assert_eq!(show("a a+"), "a+ a + 1");
    assert_eq!(show("a a+^2"), "a+^2 a + 2 a+");
    assert_eq!(show(""), "1");
    assert_eq!(parse_word("a a+").unwrap().normal_order(Mode::Env).to_string(), "a+ a + c");
    assert_eq!(NormalForm::xd(1, 0).scale(&rat(-3, 2)).to_string(), "-3/2 a+");
    assert_eq!(NormalForm::zero(Mode::Hw).to_string(), "0");
}

#[test]
fn multiply_examples() {
    let d = NormalForm::xd(0, 1);
    let x2 = NormalForm::xd(2, 0);
    assert_eq!(d.mul(&x2), nf(&[((2, 1, 0), 1), ((1, 0, 0), 2)], Mode::Hw));
    let b22 = NormalForm::xd(2, 2);
    let expect = nf(&[((4, 4, 0), 1), ((3, 3, 0), 4), ((2, 2, 0), 2)], Mode::Hw);
    assert_eq!(b22.mul(&b22), expect);
    let word = parse_word("a+^2 a^2 a+^2 a^2").unwrap();
    assert_eq!(normal_order_by_rewriting(&word, Mode::Hw), expect);
    assert_eq!(b22.mul(&NormalForm::identity(Mode::Hw)), b22);
}

/// `a+^(k+1) a + r a+^k`.
fn bracket_operand(k: usize, r: i64) -> NormalForm {
    NormalForm::xd(k + 1, 1).add(&NormalForm::xd(k, 0).scale(&int(r)))
}

#[test]
fn lie_bracket_closed_form() {
    for (k, l, r, s) in [(1, 2, 1, 1), (0, 3, 2, -1), (2, 2, 1, 5), (4, 1, -3, 2)] {
        let b = bracket_operand(k, r).bracket(&bracket_operand(l, s));
        let m = l as i64 - k as i64;
        let theta = s * l as i64 - r * k as i64;
        let expect = NormalForm::xd(k + l + 1, 1)
            .scale(&int(m))
            .add(&NormalForm::xd(k + l, 0).scale(&int(theta)));
        assert_eq!(b, expect, "k={k} l={l} r={r} s={s}");
    }
    let u = bracket_operand(3, 2);
    assert!(u.bracket(&u).is_zero());
    assert_eq!(
        bracket_operand(1, 1).bracket(&bracket_operand(2, 1)).to_string(),
        "a+^4 a + a+^3"
    );
}

#[test]
fn powers() {
    let xd = NormalForm::xd(1, 1);
    assert_eq!(xd.pow(2), nf(&[((2, 2, 0), 1), ((1, 1, 0), 1)], Mode::Hw));
    assert_eq!(xd.pow(3), nf(&[((3, 3, 0), 1), ((2, 2, 0), 3), ((1, 1, 0), 1)], Mode::Hw));
    assert_eq!(xd.pow(1), xd);
    assert_eq!(xd.pow(0), NormalForm::identity(Mode::Hw));
}

#[test]
fn stirling_tables() {
    let t = gen_stirling(&NormalForm::xd(1, 1), 10).unwrap();
    let oracle = stirling2(10);
    for n in 0..=10 {
        for k in 0..=n {
            assert_eq!(t.get(n, k), int(oracle[n][k]));
        }
    }
    assert_eq!(t.get(4, 2), int(7));
    assert!(t.is_unitriangular());
    let t = gen_stirling(&NormalForm::xd(2, 2), 2).unwrap();
    assert_eq!((t.get(2, 4), t.get(2, 3), t.get(2, 2)), (int(1), int(4), int(2)));
    assert!(t.staircase(2));
    let t = gen_stirling(&NormalForm::xd(1, 1), 1).unwrap();
    assert_eq!(t.row(1), &[int(0), int(1)]);
    let mixed = NormalForm::xd(2, 1).add(&NormalForm::xd(1, 1));
    assert_eq!(gen_stirling(&mixed, 3), Err(crate::Error::NotHomogeneous));
}

#[test]
fn negative_excess_layout() {
    // XD^2: w^n = (sum_k S(n,k) X^k D^k) D^n.
    let t = gen_stirling(&NormalForm::xd(1, 2), 3).unwrap();
    assert_eq!(t.excess(), -1);
    let p = NormalForm::xd(1, 2).pow(3);
    for (&(i, j, _), c) in p.terms() {
        assert_eq!(j, i + 3);
        assert_eq!(&t.get(3, i), c);
    }
}

#[test]
fn balanced_explicit_examples() {
    let alpha = [int(1)];
    assert_eq!(balanced_stirling_explicit(&alpha, 3, 2), int(3));
    assert_eq!(balanced_stirling_explicit(&alpha, 4, 2), int(7));
    for n in 0..8 {
        assert_eq!(balanced_stirling_explicit(&alpha, n, n), int(1));
    }
    // w = XD + 2 X^2 D^2 - X^3 D^3 / 3
    let alpha = [int(1), int(2), rat(-1, 3)];
    let w = NormalForm::xd(1, 1)
        .add(&NormalForm::xd(2, 2).scale(&int(2)))
        .add(&NormalForm::xd(3, 3).scale(&rat(-1, 3)));
    let t = gen_stirling(&w, 6).unwrap();
    for n in 0..=6 {
        for k in 0..=3 * n {
            assert_eq!(balanced_stirling_explicit(&alpha, n, k), t.get(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn matrix_examples() {
    let m = to_matrix(&NormalForm::xd(1, 1), 6, &RefSeq::Ordinary).unwrap();
    for n in 0..6 {
        for k in 0..6 {
            let expect = if n == k { int(n as i64) } else { int(0) };
            assert_eq!(m.get(n, k), expect);
        }
    }
    // D acts as a shift on x^k/k!.
    let d = to_matrix(&NormalForm::xd(0, 1), 5, &RefSeq::Exponential).unwrap();
    assert_eq!(d.get(2, 3), int(1));
    assert_eq!(d.max_column(), Some(5));
    let sq = to_matrix(&NormalForm::xd(0, 0), 4, &RefSeq::Ordinary).unwrap();
    assert!(sq.is_unitriangular());
}

#[test]
fn matrix_product_respects_operator_product() {
    let u = parse_omega("X2D + 3XD2 - 1").unwrap();
    let v = parse_omega("D3 + 1/2 X").unwrap();
    for c in [RefSeq::Ordinary, RefSeq::Exponential] {
        let size = 8;
        let mu = to_matrix(&u, size, &c).unwrap();
        let mv = to_matrix(&v, mu.max_column().unwrap() + 1, &c).unwrap();
        let muv = to_matrix(&u.mul(&v), size, &c).unwrap();
        assert_eq!(mu.mul(&mv).unwrap(), muv);
    }
    let short = RowFiniteMatrix::identity(2);
    assert!(to_matrix(&u, 4, &RefSeq::Ordinary).unwrap().mul(&short).is_err());
}

#[test]
fn normal_form_json() {
    let u = parse_word("a a+ c").unwrap().normal_order(Mode::Env);
    let text = serde_json::to_string(&u).unwrap();
    assert_eq!(
        text,
        r#"{"mode":"env","terms":[{"i":0,"j":0,"m":2,"coeff":"1"},{"i":1,"j":1,"m":1,"coeff":"1"}]}"#
    );
    let back: NormalForm = serde_json::from_str(&text).unwrap();
    assert_eq!(back, u);
    let bad = r#"{"mode":"hw","terms":[{"i":0,"j":0,"m":1,"coeff":"1"}]}"#;
    assert!(serde_json::from_str::<NormalForm>(bad).is_err());
    let zero = r#"{"mode":"hw","terms":[{"i":0,"j":0,"m":0,"coeff":"0"}]}"#;
    assert!(serde_json::from_str::<NormalForm>(zero).is_err());
}

fn arb_word(max_len: usize) -> impl Strategy<Value = BosonWord> {
    proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B), Just(Letter::C)], 0..=max_len)
        .prop_map(BosonWord::new)
}

fn arb_nf(mode: Mode) -> impl Strategy<Value = NormalForm> {
    proptest::collection::vec(((0usize..4, 0usize..4, 0usize..2), -5i64..=5), 0..4)
        .prop_map(move |t| NormalForm::from_terms(t.into_iter().map(|(k, c)| (k, int(c))), mode))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewriting_matches_structure_constants(w in arb_word(8)) {
        for mode in [Mode::Hw, Mode::Env] {
            prop_assert_eq!(normal_order_by_rewriting(&w, mode), w.normal_order(mode));
        }
    }

    #[test]
    fn multiply_is_associative(u in arb_nf(Mode::Env), v in arb_nf(Mode::Env), w in arb_nf(Mode::Env)) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
    }

    #[test]
    fn jacobi_and_bilinearity(u in arb_nf(Mode::Hw), v in arb_nf(Mode::Hw), w in arb_nf(Mode::Hw), k in -3i64..=3) {
        let j = u.bracket(&v.bracket(&w))
            .add(&v.bracket(&w.bracket(&u)))
            .add(&w.bracket(&u.bracket(&v)));
        prop_assert!(j.is_zero());
        let lhs = u.scale(&int(k)).add(&v).bracket(&w);
        let rhs = u.bracket(&w).scale(&int(k)).add(&v.bracket(&w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn excess_is_additive(a in arb_word(6), b in arb_word(6)) {
        let p = a.normal_order(Mode::Env).mul(&b.normal_order(Mode::Env));
        for &(i, j, _) in p.terms().keys() {
            prop_assert_eq!(i as i64 - j as i64, a.excess() + b.excess());
        }
    }

    #[test]
    fn central_element_commutes(u in arb_nf(Mode::Env), m in 0usize..4) {
        let c = NormalForm::monomial(0, 0, m, int(1), Mode::Env);
        prop_assert_eq!(u.mul(&c), c.mul(&u));
    }

    #[test]
    fn matrices_compose(u in arb_nf(Mode::Hw), v in arb_nf(Mode::Hw), seed in proptest::collection::vec(-9i64..=9, 24)) {
        let c = RefSeq::Exponential;
        let mu = to_matrix(&u, 10, &c).unwrap();
        let mv = to_matrix(&v, mu.max_column().unwrap_or(0) + 1, &c).unwrap();
        let len = mv.max_column().unwrap_or(0) + 1;
        let a: Vec<_> = (0..len).map(|i| int(seed[i % seed.len()])).collect();
        let direct = to_matrix(&u.mul(&v), 10, &c).unwrap().apply(&a).unwrap();
        let staged = mu.apply(&mv.apply(&a).unwrap()).unwrap();
        prop_assert_eq!(direct, staged);
    }
}

#[test]
fn table_rows_zero_column_for_words_ending_in_a() {
    let w = parse_word("a+ a a+ a").unwrap().normal_order(Mode::Hw);
    let t = gen_stirling(&w, 5).unwrap();
    for n in 1..=5 {
        assert!(t.get(n, 0).is_zero());
    }
}
