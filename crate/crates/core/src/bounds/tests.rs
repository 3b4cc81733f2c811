use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::algebra::LaurentPolynomial;
use crate::builtin;
use crate::num::{int, rat, ratio};
use crate::polytope::Polytope;

const RAMANUJAN_TORIC: &str =
    "3582561175670188183341398160062940594467075006348688961907619188736786432";
const RAMANUJAN_SINGLE: &str = "227342064765545090058645970682830788490102521640954751090617218738262439650490819761860244936904933536";

fn b(s: &str) -> BigInt {
    s.parse().unwrap()
}

fn trivial_field() -> FieldData {
    FieldData::trivial(1, 1, 0).unwrap()
}

fn case_input(m: u64, case: Case) -> CaseAbInput {
    CaseAbInput {
        m,
        case,
        generator_degree: 2,
        d_z: 1,
        d_x: 1,
        q: 3,
        chi: 2,
        d: None,
    }
}

#[test]
fn nmorse_examples() {
    assert_eq!(nmorse_bound(2, 1, 3).unwrap(), int(128));
    assert_eq!(nmorse_bound(1, 0, 7).unwrap(), int(28));
    assert_eq!(nmorse_bound(2, 1, 1).unwrap(), int(32));
    assert!(nmorse_bound(0, 1, 1).is_err());
    assert!(nmorse_bound(1, 1, 0).is_err());
}

#[test]
fn a_const_examples() {
    let c = a_const(2, 1).unwrap();
    assert_eq!(c.a_n, int(4));
    assert_eq!(c.argument, int(32));
    assert_eq!(c.a, int(8712));
    assert_eq!(c.a_tilde, int(8712));
    let c = a_const(1, 1).unwrap();
    assert_eq!((c.a_n, c.argument, c.a, c.a_tilde), (int(2), int(4), int(16), int(16)));
    let c = a_const(3, 2).unwrap();
    assert_eq!(c.a_tilde, int(2) * c.a);
    let zero = a_const(2, 0).unwrap();
    assert_eq!(zero.a_tilde, int(0));
    assert!(zero.note.is_some());
}

#[test]
fn pure_examples() {
    assert_eq!(pure_bound(1, 1, 2, 0).unwrap().value, int(20));
    assert_eq!(pure_bound(2, 1, 3, 2).unwrap().value, int(75_986_085));
    let lo = pure_bound(2, 1, 3, 2).unwrap().value;
    let hi = pure_bound(2, 1, 3, 3).unwrap().value;
    assert_eq!(hi - lo, int(8715));
}

#[test]
fn profile_examples() {
    assert_eq!(forest_degree_profile(1, 1, 4).unwrap(), vec![int(20)]);
    assert_eq!(
        forest_degree_profile(2, 1, 1).unwrap(),
        vec![int(8713), int(8713) * int(8713)]
    );
    for (n, delta, d, chi) in [(1, 1, 3, 0), (2, 1, 2, 2), (3, 2, 1, 1)] {
        let p = forest_degree_profile(n, delta, d).unwrap();
        let below = if n >= 2 { p[n as usize - 2].clone() } else { int(1) };
        let expected = &p[n as usize - 1] + BigInt::from(2 + chi) * below;
        assert_eq!(pure_bound(n, delta, d, chi).unwrap().value, expected);
        assert_eq!(p[0], BigInt::from(d) + a_const(n, delta).unwrap().a_tilde);
    }
}

#[test]
fn b_const_examples() {
    assert_eq!(b_const(2, 1).unwrap(), (int(32), int(8_405_000)));
    let (b1, _) = b_const(1, 3).unwrap();
    assert_eq!(b1, int(16));
    // n = 1: N(1, δ, 64δ) = 4·64δ.
    assert_eq!(b_const(1, 3).unwrap().1, int(4 * 64 * 3));
    for n in 1..6 {
        assert_eq!(b_n(n), int(8) * a_n(n));
    }
    assert!(b_const(2, 0).is_err());
}

#[test]
fn delta_nxi_examples() {
    let origin = delta_nxi(2, 1, &Polytope::origin(2)).unwrap();
    assert_eq!(origin.polytope, Polytope::origin(2));
    let s = delta_nxi(2, 1, &Polytope::standard_simplex(2)).unwrap();
    assert_eq!(s.scale, int(32 * 4 * 2) + int(8_405_000));
    assert_eq!(s.polytope, Polytope::standard_simplex(2).scale_by(&s.scale));
    let s2 = delta_nxi(2, 2, &Polytope::standard_simplex(2)).unwrap();
    assert!(s2.scale > s.scale);
    let off = Polytope::integral_box(&[1, 1], &[2, 2]).unwrap();
    assert!(matches!(delta_nxi(2, 1, &off), Err(crate::Error::OriginNotContained)));
}

#[test]
fn toric_simplex_example() {
    let r = toric_bound(2, 1, &Polytope::standard_simplex(2).scale(2), &Polytope::origin(2), 0)
        .unwrap();
    assert_eq!(r.value, int(8));
    assert_eq!(r.rational("W_1(K)"), Some(rat(1)));
    assert_eq!(r.integer("coarse"), Some(int(12)));
}

#[test]
fn toric_rejects_non_integral() {
    let half = Polytope::from_rational_points(1, vec![vec![rat(0)], vec![ratio(1, 2)]]).unwrap();
    assert!(matches!(
        toric_bound(1, 1, &half, &Polytope::origin(1), 0),
        Err(crate::Error::NonIntegral)
    ));
}

fn ramanujan() -> (FieldData, Polytope) {
    let fd = FieldData::from_field(&builtin::ramanujan_field()).unwrap();
    let p = LaurentPolynomial::parse("x2^2 - x3", 4).unwrap();
    (fd, p.newton_polytope().unwrap())
}

#[test]
fn ramanujan_toric_pinned() {
    let (fd, newton) = ramanujan();
    assert_eq!(fd.delta, 2);
    let r = toric_bound(4, fd.delta, &newton, &fd.xi, builtin::RAMANUJAN_CHI).unwrap();
    assert_eq!(r.value, b(RAMANUJAN_TORIC));
    assert_eq!(r.integer("coarse"), Some(int(0)));
}

#[test]
fn ramanujan_single_pinned() {
    let (fd, _) = ramanujan();
    let r = mixed_single_bound(3, &fd, 1, 2, builtin::RAMANUJAN_CHI).unwrap();
    assert_eq!(r.value, b(RAMANUJAN_SINGLE));
    assert!(r.integer("toric_on_Q").unwrap() <= r.value);
}

#[test]
fn mixed_single_trivial_field() {
    let r = mixed_single_bound(1, &trivial_field(), 1, 1, 2).unwrap();
    assert_eq!(r.integer("alpha"), Some(int(10)));
    assert_eq!(r.value, int(10));
    let r3 = mixed_single_bound(1, &trivial_field(), 1, 1, 3).unwrap();
    assert_eq!(r3.integer("alpha"), Some(int(12)));
    let doubled = mixed_single_bound(1, &trivial_field(), 1, 2, 2).unwrap();
    assert_eq!(doubled.integer("d_z*d_x^n"), Some(int(2)));
}

#[test]
fn mixed_single_volume_of_q() {
    // Q = 3Δ_x + 2Δ_z in two variables is a 2×3 rectangle.
    let r = mixed_single_bound(1, &trivial_field(), 2, 3, 0).unwrap();
    assert_eq!(r.rational("vol(Q)"), Some(rat(6)));
}

#[test]
fn mixed_multi_trivial_field() {
    let r = mixed_multi_bound(1, &trivial_field(), 1, 1, 3, 2).unwrap();
    assert_eq!(r.integer("beta_1"), Some(int(1)));
    assert_eq!(r.integer("beta_2"), Some(int(3)));
    assert_eq!(r.integer("beta_3"), Some(int(1)));
    assert_eq!(r.value, int(12));
    assert_eq!(r.constants["double_Delta_z_vanishes"], serde_json::json!(true));
    assert_eq!(r.constants["beta_1_containment_verified"], serde_json::json!(true));
    assert_eq!(r.integer("mixed_single_value"), Some(int(10)));
}

#[test]
fn mixed_multi_ramanujan_beta() {
    let (fd, _) = ramanujan();
    let r = mixed_multi_bound(3, &fd, 1, 2, 1, 2).unwrap();
    assert_eq!(r.constants["beta_1_containment_verified"], serde_json::json!(true));
    assert!(r.integer("beta_1_tight").unwrap() <= r.integer("beta_1").unwrap());
    assert!(r.integer("level_sum").unwrap() <= r.value);
}

#[test]
fn caseab_examples() {
    let a = caseab_bound(1, &trivial_field(), &case_input(1, Case::A)).unwrap();
    let bb = caseab_bound(1, &trivial_field(), &case_input(1, Case::B)).unwrap();
    assert_eq!(a.value, int(16));
    assert_eq!(bb.value, int(20));
    assert_eq!(a.rational("hf_lower"), Some(rat(1)));
    let full = caseab_bound(1, &trivial_field(), &case_input(2, Case::A)).unwrap();
    assert!(!full.notes.is_empty());
    assert!(caseab_bound(1, &trivial_field(), &case_input(3, Case::A)).is_err());
}

#[test]
fn caseab_linear_in_dz_and_q() {
    let mut inp = case_input(1, Case::A);
    let value = |inp: &CaseAbInput| caseab_bound(1, &trivial_field(), inp).unwrap().value;
    inp.d_z = 10;
    let v10 = value(&inp);
    inp.d_z = 20;
    let v20 = value(&inp);
    inp.d_z = 30;
    let v30 = value(&inp);
    assert_eq!(&v30 - &v20, &v20 - &v10);
    inp.q = 4;
    assert!(value(&inp) > v30);
}

#[test]
fn caseab_hf_lower_truncates() {
    let mut inp = case_input(2, Case::B);
    inp.d_z = 3;
    inp.d_x = 5;
    inp.d = Some(4);
    let r = caseab_bound(1, &trivial_field(), &inp).unwrap();
    // max(3·4, 4²)/2! = 8.
    assert_eq!(r.rational("hf_lower"), Some(rat(8)));
}

#[test]
fn hilbert_helpers() {
    assert_eq!(hf_ambient_pure(2, 2), int(6));
    for t in 0..6 {
        assert_eq!(hf_upper_pure(&int(1), t, 1), BigInt::from(t + 1));
    }
    assert_eq!(hf_upper_pure(&int(3), 2, 2), int(14));
    let r = hf_finder_threshold(2, 5, &int(1), 1).unwrap();
    assert!(r.holds);
    assert_eq!(r.threshold, ratio(5, 4));
    assert!(!hf_finder_threshold(2, 5, &int(1000), 1).unwrap().holds);
    // 7^2 / 2 is not an integer; use d = 6, n = 2, k = 0: 36/4 = 9.
    assert!(hf_finder_threshold(2, 6, &int(9), 0).unwrap().holds);
    assert!(!hf_finder_threshold(2, 6, &int(10), 0).unwrap().holds);
    assert!(hf_finder_threshold(2, 4, &int(1), 1).is_err());
}

#[test]
fn toric_threshold() {
    let d = Polytope::standard_simplex(2).scale(4);
    // (L_{Δ_d})^2 = 16; B_2 = 32.
    assert!(toric_hf_finder_threshold(&d, &ratio(1, 2)).unwrap());
    assert!(!toric_hf_finder_threshold(&d, &rat(1)).unwrap());
}

#[test]
fn pure_vs_toric_order_of_magnitude() {
    // Δ = dΔ_x and Δ_ξ = Δ_x: both chains are finite and positive.
    for d in 1..3u64 {
        let pure = pure_bound(2, 1, d, 2).unwrap().value;
        let toric = toric_bound(
            2,
            1,
            &Polytope::standard_simplex(2).scale(d),
            &Polytope::standard_simplex(2),
            2,
        )
        .unwrap()
        .value;
        assert!(pure > int(0) && toric > int(0));
        let ratio = crate::num::Rational::new(toric, pure);
        assert!(ratio > rat(0));
    }
}

#[test]
fn reports_serialize_with_symbols() {
    let r = pure_bound(2, 1, 3, 2).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["theorem"], "pure");
    assert_eq!(v["value"], "75986085");
    assert_eq!(v["constants"]["a_tilde"], "8712");
    assert_eq!(v["constants"]["A_n"], "4");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nmorse_monotone(n in 1u64..4, delta in 0u64..3, d in 1u64..6) {
        let v = nmorse_bound(n, delta, d).unwrap();
        prop_assert!(nmorse_bound(n, delta, d + 1).unwrap() >= v);
        prop_assert!(nmorse_bound(n, delta + 1, d).unwrap() >= v);
    }

    #[test]
    fn pure_monotone(n in 1u64..4, delta in 1u64..3, d in 1u64..6, chi in 0u64..4) {
        let v = pure_bound(n, delta, d, chi).unwrap().value;
        prop_assert!(v >= BigInt::from(0));
        prop_assert!(pure_bound(n, delta, d + 1, chi).unwrap().value >= v.clone());
        prop_assert!(pure_bound(n, delta + 1, d, chi).unwrap().value >= v.clone());
        prop_assert!(pure_bound(n, delta, d, chi + 1).unwrap().value >= v);
    }

    #[test]
    fn toric_monotone(d in 1u64..4, chi in 0u64..3, delta in 1u64..3) {
        let newton = Polytope::standard_simplex(2).scale(d);
        let xi = Polytope::standard_simplex(2);
        let v = toric_bound(2, delta, &newton, &xi, chi).unwrap().value;
        prop_assert!(toric_bound(2, delta, &Polytope::standard_simplex(2).scale(d + 1), &xi, chi).unwrap().value >= v.clone());
        prop_assert!(toric_bound(2, delta, &newton, &xi, chi + 1).unwrap().value >= v.clone());
        prop_assert!(toric_bound(2, delta + 1, &newton, &xi, chi).unwrap().value >= v);
    }

    #[test]
    fn mixed_monotone(dz in 1u64..4, dx in 1u64..4, q in 1u64..4, chi in 0u64..3) {
        let f = trivial_field();
        let s = mixed_single_bound(1, &f, dz, dx, chi).unwrap().value;
        prop_assert!(mixed_single_bound(1, &f, dz + 1, dx, chi).unwrap().value >= s.clone());
        prop_assert!(mixed_single_bound(1, &f, dz, dx + 1, chi).unwrap().value >= s.clone());
        prop_assert!(mixed_single_bound(1, &f, dz, dx, chi + 1).unwrap().value >= s);
        let m = mixed_multi_bound(1, &f, dz, dx, q, chi).unwrap();
        prop_assert!(m.integer("level_sum").unwrap() <= m.value.clone());
        prop_assert!(mixed_multi_bound(1, &f, dz + 1, dx, q, chi).unwrap().value >= m.value.clone());
        prop_assert!(mixed_multi_bound(1, &f, dz, dx + 1, q, chi).unwrap().value >= m.value.clone());
        prop_assert!(mixed_multi_bound(1, &f, dz, dx, q + 1, chi).unwrap().value >= m.value.clone());
        prop_assert!(mixed_multi_bound(1, &f, dz, dx, q, chi + 1).unwrap().value >= m.value);
    }

    #[test]
    fn caseab_monotone(dz in 1u64..4, dx in 1u64..4, q in 1u64..3, m in 1u64..3) {
        let f = FieldData::new(1, Polytope::standard_simplex(2), 0).unwrap();
        for case in [Case::A, Case::B] {
            let inp = CaseAbInput { m, case, generator_degree: 2, d_z: dz, d_x: dx, q, chi: 1, d: None };
            let v = caseab_bound(1, &f, &inp).unwrap().value;
            let bump = |g: &dyn Fn(&mut CaseAbInput)| {
                let mut i = inp.clone();
                g(&mut i);
                caseab_bound(1, &f, &i).unwrap().value
            };
            prop_assert!(bump(&|i| i.d_z += 1) >= v);
            prop_assert!(bump(&|i| i.d_x += 1) >= v);
            prop_assert!(bump(&|i| i.q += 1) >= v);
            prop_assert!(bump(&|i| i.chi += 1) >= v);
            prop_assert!(bump(&|i| i.generator_degree += 1) >= v);
        }
        let a = caseab_bound(1, &f, &CaseAbInput { m, case: Case::A, generator_degree: 2, d_z: dz, d_x: dx, q, chi: 1, d: None }).unwrap().value;
        let bv = caseab_bound(1, &f, &CaseAbInput { m, case: Case::B, generator_degree: 2, d_z: dz, d_x: dx, q, chi: 1, d: None }).unwrap().value;
        prop_assert!(bv >= a);
    }
}
