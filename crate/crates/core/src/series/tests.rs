use super::*;
use crate::algebra::{parse_polynomial, LaurentPolynomial, PolyVectorField};
use crate::builtin;
use crate::num::{rat, ratio};

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn field(srcs: &[&str], names: &[&str], time: Option<usize>) -> PolyVectorField {
    let v = vars(names);
    PolyVectorField::new(srcs.iter().map(|s| parse_polynomial(s, &v).unwrap()).collect(), time)
        .unwrap()
}

fn series(c: &[Rational]) -> Vec<Rational> {
    c.to_vec()
}

fn divisor_sum(k: u64, p: u32) -> i64 {
    (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| d.pow(p) as i64).sum()
}

#[test]
fn series_arithmetic() {
    let a = TruncatedSeries::new(vec![rat(1), rat(1), rat(0), rat(0)]);
    let inv = a.inverse().unwrap();
    assert_eq!(inv.coeffs(), &[rat(1), rat(-1), rat(1), rat(-1)]);
    assert_eq!(&a * &inv, TruncatedSeries::constant(rat(1), 3));
    assert_eq!(a.pow(3).coeffs(), &[rat(1), rat(3), rat(3), rat(1)]);
    let short = TruncatedSeries::new(vec![rat(2), rat(5)]);
    assert_eq!((&a + &short).order(), 1);
    assert_eq!(a.derivative().coeffs(), &[rat(1), rat(0), rat(0)]);
    assert_eq!(TruncatedSeries::zero(4).valuation(), None);
    assert!(TruncatedSeries::zero(2).inverse().is_err());
}

#[test]
fn regular_examples() {
    let g = expand_regular(&builtin::parabola_field(), &[rat(0), rat(0)], 5).unwrap();
    assert_eq!(g.components()[0].coeffs(), &series(&[rat(0), rat(1), rat(0), rat(0), rat(0), rat(0)]));
    assert_eq!(g.components()[1].coeffs(), &series(&[rat(0), rat(0), rat(1), rat(0), rat(0), rat(0)]));

    let g = expand_regular(&builtin::linear_diagonal_field(), &[rat(1), rat(1)], 3).unwrap();
    assert_eq!(g.components()[0].coeffs(), &[rat(1), rat(1), ratio(1, 2), ratio(1, 6)]);
    assert_eq!(g.components()[1].coeffs(), &[rat(1), rat(2), rat(2), ratio(4, 3)]);

    let line = field(&["1"], &["x"], None);
    let g = expand_regular(&line, &[rat(0)], 3).unwrap();
    assert_eq!(g.components()[0].coeffs(), &[rat(0), rat(1), rat(0), rat(0)]);

    assert_eq!(
        expand_regular(&builtin::linear_diagonal_field(), &[rat(0), rat(0)], 3),
        Err(Error::SingularPoint)
    );
}

#[test]
fn rational_examples() {
    let zx = ["z", "x"];
    let v = vars(&zx);
    let p = |s: &str| parse_polynomial(s, &v).unwrap();
    let exp = RationalSystem::new(0, vec![p("x")], vec![p("1")]).unwrap();
    let g = expand_rational(&exp, &rat(0), &[rat(1)], 4).unwrap();
    assert_eq!(g.components()[0].coeffs(), &[rat(0), rat(1), rat(0), rat(0), rat(0)]);
    assert_eq!(
        g.components()[1].coeffs(),
        &[rat(1), rat(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)]
    );

    let log = RationalSystem::new(0, vec![p("1")], vec![p("1 - z")]).unwrap();
    let g = expand_rational(&log, &rat(0), &[rat(0)], 4).unwrap();
    assert_eq!(
        g.components()[1].coeffs(),
        &[rat(0), rat(1), ratio(1, 2), ratio(1, 3), ratio(1, 4)]
    );

    let flat = RationalSystem::new(0, vec![p("0")], vec![p("1")]).unwrap();
    let g = expand_rational(&flat, &rat(3), &[rat(7)], 3).unwrap();
    assert_eq!(g.components()[1], TruncatedSeries::constant(rat(7), 3));
    assert_eq!(g.components()[0].coeffs(), &[rat(3), rat(1), rat(0), rat(0)]);

    let bad = RationalSystem::new(0, vec![p("1")], vec![p("z")]).unwrap();
    assert_eq!(
        expand_rational(&bad, &rat(0), &[rat(0)], 3),
        Err(Error::VanishingDenominator { index: 1 })
    );

    // the solution x(z) with x' = x/(x + z) and x(0) = 1 satisfies x² + 2zx... checked by residual
    let implicit = RationalSystem::new(0, vec![p("x")], vec![p("x + z")]).unwrap();
    let g = expand_rational(&implicit, &rat(0), &[rat(1)], 12).unwrap();
    let xi = field(&["x + z", "x"], &zx, Some(0));
    assert!(residual_check(&xi, &g).unwrap().clean);
}

#[test]
fn ramanujan_against_divisor_sums() {
    let g = builtin::ramanujan_germ(24).unwrap();
    let c = g.components();
    for k in 1..=24u64 {
        let i = k as usize;
        assert_eq!(c[1].coeff(i), rat(-24 * divisor_sum(k, 1)), "P at {k}");
        assert_eq!(c[2].coeff(i), rat(240 * divisor_sum(k, 3)), "Q at {k}");
        assert_eq!(c[3].coeff(i), rat(-504 * divisor_sum(k, 5)), "R at {k}");
    }
    let report = residual_check(&builtin::ramanujan_field(), &g).unwrap();
    assert!(report.clean, "{report:?}");
}

#[test]
fn fuchsian_resonances() {
    let sys = builtin::ramanujan_system();
    match expand_fuchsian(&sys, &vec![rat(1); 3], 4, &Pins::new()) {
        Err(Error::Resonance { order: 1, .. }) => {}
        other => panic!("expected resonance at order 1, got {other:?}"),
    }

    let zx = ["z", "x"];
    let v = vars(&zx);
    let zero = FuchsianSystem::new(0, vec![parse_polynomial("x - x", &v).unwrap()]).unwrap();
    let g = expand_fuchsian(&zero, &[ratio(5, 3)], 6, &Pins::new()).unwrap();
    assert_eq!(g.components()[1], TruncatedSeries::constant(ratio(5, 3), 6));

    let two = FuchsianSystem::new(0, vec![parse_polynomial("2*x", &v).unwrap()]).unwrap();
    match expand_fuchsian(&two, &[rat(0)], 6, &Pins::new()) {
        Err(Error::Resonance { order: 2, .. }) => {}
        other => panic!("expected resonance at order 2, got {other:?}"),
    }
    let pinned = Pins::from([(2, vec![Some(rat(3))])]);
    let g = expand_fuchsian(&two, &[rat(0)], 6, &pinned).unwrap();
    assert_eq!(g.components()[1].coeff(2), rat(3));
    assert!(residual_check(&two.to_field(), &g).unwrap().clean);

    let off = FuchsianSystem::new(0, vec![parse_polynomial("x - 1", &v).unwrap()]).unwrap();
    assert_eq!(
        expand_fuchsian(&off, &[rat(0)], 3, &Pins::new()),
        Err(Error::InconsistentBasePoint { index: 1 })
    );
}

#[test]
fn compose_examples() {
    let g = expand_regular(&builtin::parabola_field(), &[rat(0), rat(0)], 6).unwrap();
    let xy = vars(&["x", "y"]);
    let y = parse_polynomial("y", &xy).unwrap();
    assert_eq!(compose(&y, &g).unwrap().valuation(), Some(2));
    assert_eq!(
        compose(&LaurentPolynomial::one(2), &g).unwrap(),
        TruncatedSeries::constant(rat(1), 6)
    );

    let r = builtin::ramanujan_germ(6).unwrap();
    let f = parse_polynomial("X^2 - Y", &builtin::ramanujan_variables()).unwrap();
    let s = compose(&f, &r).unwrap();
    assert_eq!(s.valuation(), Some(1));
    assert_eq!(s.coeff(1), rat(-288));

    let laurent = parse_polynomial("x^-1", &xy).unwrap();
    assert_eq!(compose(&laurent, &g), Err(Error::NonInvertible { index: 0 }));
    let d = expand_regular(&builtin::linear_diagonal_field(), &[rat(1), rat(1)], 4).unwrap();
    let e = compose(&parse_polynomial("x^-2*y", &xy).unwrap(), &d).unwrap();
    assert_eq!(e, TruncatedSeries::constant(rat(1), 4));
}

#[test]
fn residual_examples() {
    let r = builtin::ramanujan_germ(10).unwrap();
    let rep = residual_check(&builtin::ramanujan_field(), &r).unwrap();
    assert!(rep.clean);
    assert_eq!(rep.checked_through, 9);

    let bad = TrajectoryGerm::from_polynomials(
        &[vec![rat(0), rat(1)], vec![rat(0), rat(0), rat(0), rat(1)]],
        5,
        GermForm::Flow,
    )
    .unwrap();
    let rep = residual_check(&builtin::parabola_field(), &bad).unwrap();
    assert!(!rep.clean);
    assert_eq!(rep.germ_order, Some(2));
    assert_eq!(rep.residual_order, Some(1));

    let constant = TrajectoryGerm::from_polynomials(&[vec![rat(3)], vec![rat(-2)]], 4, GermForm::Flow)
        .unwrap();
    let zero = PolyVectorField::new(vec![LaurentPolynomial::zero(2); 2], None).unwrap();
    assert!(residual_check(&zero, &constant).unwrap().clean);

    let pa = builtin::power_a_germ(5, 12).unwrap();
    assert!(residual_check(&builtin::power_a_field(5), &pa).unwrap().clean);
}

#[test]
fn germ_json_round_trip() {
    let g = builtin::ramanujan_germ(5).unwrap();
    let j = serde_json::to_string(&g.to_json()).unwrap();
    let back = TrajectoryGerm::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, g);
    let short: GermJson =
        serde_json::from_str(r#"{"dim": 2, "order": 4, "components": [["0","1"],["0","0","1"]]}"#)
            .unwrap();
    let g = TrajectoryGerm::from_json(&short).unwrap();
    assert_eq!(g.order(), 4);
    assert_eq!(g.provenance(), Provenance::UserSupplied);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn poly(dim: usize, deg: i64) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(
            (prop::collection::vec(0..=deg, dim), -4i64..5),
            1..5,
        )
        .prop_map(move |ts| {
            LaurentPolynomial::from_terms(
                dim,
                ts.into_iter()
                    .map(|(e, c)| (crate::algebra::ExponentVector::new(e), rat(c))),
            )
            .unwrap()
        })
    }

    fn regular_instance() -> impl Strategy<Value = (PolyVectorField, Vec<Rational>)> {
        (prop::collection::vec(poly(2, 2), 2), prop::collection::vec(-2i64..3, 2))
            .prop_map(|(cs, p)| {
                let mut cs = cs;
                cs[0] = &cs[0] + &LaurentPolynomial::one(2);
                (
                    PolyVectorField::new(cs, None).unwrap(),
                    p.into_iter().map(rat).collect(),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn expansion_is_clean_and_stable((xi, p) in regular_instance()) {
            prop_assume!(!xi.is_singular_at(&p).unwrap());
            let g = expand_regular(&xi, &p, 6).unwrap();
            prop_assert!(residual_check(&xi, &g).unwrap().clean);
            let longer = expand_regular(&xi, &p, 9).unwrap();
            prop_assert_eq!(longer.truncate(6), g);
        }

        #[test]
        fn compose_is_multiplicative((xi, p) in regular_instance(), a in poly(2, 2), b in poly(2, 2)) {
            prop_assume!(!xi.is_singular_at(&p).unwrap());
            let g = expand_regular(&xi, &p, 5).unwrap();
            let lhs = compose(&(&a * &b), &g).unwrap();
            let rhs = &compose(&a, &g).unwrap() * &compose(&b, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
