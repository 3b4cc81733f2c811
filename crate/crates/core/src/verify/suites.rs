//! Trial generators and checks for the property suites.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::hilbert::{hf_parametrized, monomial_curve_width, simplex_monomials};
use super::roots::{count_torus_roots_2d, RootCount};
use super::univariate::UniPoly;
use super::{run_property_suite, Check, InstanceSpec, Suite, SuiteSummary, TrialReport, Verdict};
use crate::algebra::{default_variables, ExponentVector, LaurentPolynomial, PolyVectorField};
use crate::bounds::{hf_ambient_pure, hf_upper_pure, nmorse_bound};
use crate::builtin;
use crate::exec::Execution;
use crate::mult::{multiplicity, rolle_order_check, MultOptions, MultiplicityResult};
use crate::num::{self, Rational};
use crate::polytope::{mixed_volume_with, Polytope};
use crate::series::RegularSource;
use crate::{Error, Result};

const REGENERATIONS: usize = 10;

/// The root-counting suite: `#roots = 2! V(Δ_1, Δ_2)` on generic systems.
pub fn bk_check(spec: &InstanceSpec) -> Result<SuiteSummary> {
    run_property_suite(Suite::Bk, spec, Execution::default())
}

pub(super) fn validate(suite: Suite, spec: &InstanceSpec) -> Result<()> {
    if spec.max_n == 0 {
        return Err(Error::Range("max_n must be at least 1".into()));
    }
    if spec.max_n > 4 && matches!(suite, Suite::VolIvol | Suite::Hilbert | Suite::MixedVolume) {
        return Err(Error::Range("this suite supports max_n <= 4".into()));
    }
    if matches!(suite, Suite::RolleOrder | Suite::BoundSoundness) && spec.max_delta == 0 {
        return Err(Error::Range("max_delta must be at least 1".into()));
    }
    if suite == Suite::Bk {
        if !(1..=62).contains(&spec.height_bits) {
            return Err(Error::Range("height_bits must lie in 1..=62".into()));
        }
        if let Some(s) = &spec.supports {
            for a in s {
                if a.is_empty() || a.iter().any(|e| e.dim() != 2) {
                    return Err(Error::Invalid("supports must be nonempty sets in Z^2".into()));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of one draw.
enum Draw {
    Done(Vec<Check>, Value),
    Degenerate(Value),
}

pub(super) fn run_trial(suite: Suite, spec: &InstanceSpec, id: usize) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(id as u64);
    let mut regenerated = 0;
    let mut last_instance = Value::Null;
    let mut state = TrialState::default();
    loop {
        let draw = match suite {
            Suite::Bk => bk_draw(&mut rng, spec, &mut state),
            Suite::VolIvol => vol_ivol_draw(&mut rng, spec),
            Suite::RolleOrder => rolle_regular_draw(&mut rng, spec),
            Suite::RolleSingular => rolle_singular_draw(&mut rng, spec),
            Suite::BoundSoundness => soundness_draw(&mut rng, spec),
            Suite::MixedVolume => mixed_volume_draw(&mut rng, spec),
            Suite::DeltaAdditivity => delta_additivity_draw(&mut rng, spec),
            Suite::Hilbert => hilbert_draw(&mut rng, spec),
        };
        match draw {
            Ok(Draw::Done(checks, instance)) => {
                let verdict = if checks.iter().all(|c| c.pass) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                return TrialReport {
                    suite,
                    id,
                    verdict,
                    checks,
                    regenerated,
                    instance,
                };
            }
            Ok(Draw::Degenerate(instance)) => {
                last_instance = instance;
                if regenerated == REGENERATIONS {
                    return TrialReport {
                        suite,
                        id,
                        verdict: Verdict::DegenerateRegenerated,
                        checks: Vec::new(),
                        regenerated,
                        instance: last_instance,
                    };
                }
                regenerated += 1;
            }
            Err(e) => {
                return TrialReport {
                    suite,
                    id,
                    verdict: Verdict::Fail,
                    checks: vec![Check::new("computation succeeds", e.to_string(), "ok", false)],
                    regenerated,
                    instance: last_instance,
                };
            }
        }
    }
}

/// Data kept across regenerations of one trial.
#[derive(Default)]
struct TrialState {
    supports: Option<[Vec<ExponentVector>; 2]>,
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, count: usize, radius: i64) -> Vec<ExponentVector> {
    let mut set = BTreeSet::new();
    let cap = (2 * radius + 1).pow(n as u32) as usize;
    while set.len() < count.min(cap) {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        set.insert(ExponentVector::new(v));
    }
    set.into_iter().collect()
}

/// A polynomial with `terms` random monomials of total degree at most `deg`.
fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u64, terms: usize, height: i64) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero(n);
    for _ in 0..terms {
        let mut left = deg as i64;
        let mut e = vec![0i64; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in order {
            let v = rng.gen_range(0..=left);
            e[i] = v;
            left -= v;
        }
        p = &p + &LaurentPolynomial::monomial(ExponentVector::new(e), num::rat(nonzero(rng, height)));
    }
    p
}

fn exprs(polys: &[&LaurentPolynomial]) -> Value {
    let vars = default_variables(polys.first().map_or(0, |p| p.dim()));
    Value::Array(polys.iter().map(|p| Value::String(p.to_expr(&vars))).collect())
}

fn points_json(points: &[ExponentVector]) -> Value {
    serde_json::to_value(points).expect("json")
}

fn bk_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec, state: &mut TrialState) -> Result<Draw> {
    let supports = match (&state.supports, &spec.supports) {
        (Some(s), _) => s.clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => {
            let a = rng.gen_range(2..=6);
            let b = rng.gen_range(2..=6);
            [random_points(rng, 2, a, 3), random_points(rng, 2, b, 3)]
        }
    };
    state.supports = Some(supports.clone());
    let height = 1i64 << (spec.height_bits - 1);
    let polys: Vec<LaurentPolynomial> = supports
        .iter()
        .map(|s| {
            LaurentPolynomial::from_terms(
                2,
                s.iter().map(|e| (e.clone(), num::rat(nonzero(rng, height)))),
            )
        })
        .collect::<Result<_>>()?;
    let instance = json!({
        "supports": [points_json(&supports[0]), points_json(&supports[1])],
        "polynomials": exprs(&[&polys[0], &polys[1]]),
    });
    let h1 = Polytope::hull(&supports[0])?;
    let h2 = Polytope::hull(&supports[1])?;
    let mv = mixed_volume_with(&[&h1, &h2], Execution::Sequential)?;
    let expected = mv * num::rat(2);
    Ok(match count_torus_roots_2d(&polys[0], &polys[1])? {
        RootCount::Count(c) => Draw::Done(
            vec![Check::new(
                "#roots in (C*)^2 = 2! V(Δ_1, Δ_2)",
                c,
                num::format_rational(&expected),
                num::rat(c as i64) == expected,
            )],
            instance,
        ),
        RootCount::Degenerate(reason) => {
            let mut instance = instance;
            instance["degeneracy"] = serde_json::to_value(reason).expect("json");
            Draw::Degenerate(instance)
        }
    })
}

fn vol_ivol_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n);
    let radius = n as i64 + 1;
    let with_cube = rng.gen_bool(0.5);
    let extra = rng.gen_range(n + 1..=n + 4);
    let mut points = random_points(rng, n, extra, radius);
    let inner = Polytope::cube(n).scale(n as u64);
    if with_cube {
        points.extend(inner.lattice_vertices()?);
    }
    let body = Polytope::hull(&points)?;
    let vol = body.volume();
    let padded = body.minkowski_sum(&Polytope::cube(n))?;
    let ivol_padded = padded.lattice_count()?;
    let mut checks = vec![Check::new(
        "ivol(Δ + Π_n) >= vol(Δ)",
        &ivol_padded,
        num::format_rational(&vol),
        Rational::from_integer(ivol_padded.clone()) >= vol,
    )];
    let contains = body.contains_polytope(&inner);
    if contains {
        let ivol = body.lattice_count()?;
        checks.push(Check::new(
            "ivol(Δ) >= vol(Δ)/4 when nΠ_n ⊆ Δ",
            &ivol,
            num::format_rational(&(&vol / num::rat(4))),
            Rational::from_integer(&ivol * 4) >= vol,
        ));
    }
    Ok(Draw::Done(
        checks,
        json!({ "n": n, "points": points_json(&points), "contains_n_cube": contains }),
    ))
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, delta: u64) -> Result<PolyVectorField> {
    let comps = (0..n)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            let d = rng.gen_range(0..=delta);
            random_poly(rng, n, d, terms, 3)
        })
        .collect();
    PolyVectorField::new(comps, None)
}

/// A random regular instance: field, base point with `ξ(p) != 0`.
fn regular_instance(rng: &mut ChaCha8Rng, n: usize, delta: u64) -> Result<Option<(PolyVectorField, Vec<Rational>)>> {
    let field = random_field(rng, n, delta)?;
    let point: Vec<Rational> = (0..n).map(|_| num::rat(rng.gen_range(-2..=2))).collect();
    if field.is_singular_at(&point)? {
        return Ok(None);
    }
    Ok(Some((field, point)))
}

/// `f - f(p)` for a random `f` of degree at most `deg`.
fn vanishing_poly(rng: &mut ChaCha8Rng, n: usize, deg: u64, point: &[Rational]) -> Result<LaurentPolynomial> {
    let terms = rng.gen_range(1..=4);
    let f = random_poly(rng, n, deg, terms, 5);
    let c = f.eval(point)?;
    Ok(&f - &LaurentPolynomial::constant(n, c))
}

fn field_json(field: &PolyVectorField, point: &[Rational], f: &LaurentPolynomial) -> Value {
    let comps: Vec<&LaurentPolynomial> = field.components().iter().collect();
    json!({
        "field": exprs(&comps),
        "point": point.iter().map(num::format_rational).collect::<Vec<_>>(),
        "f": exprs(&[f]),
    })
}

fn working_options() -> MultOptions {
    MultOptions {
        start: 8,
        cap: 64,
        bound: None,
    }
}

fn rolle_regular_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n);
    let delta = rng.gen_range(1..=spec.max_delta);
    let Some((field, point)) = regular_instance(rng, n, delta)? else {
        return Ok(Draw::Degenerate(json!({ "n": n, "reason": "singular base point" })));
    };
    let f = vanishing_poly(rng, n, 3, &point)?;
    let instance = field_json(&field, &point, &f);
    if f.is_zero() {
        return Ok(Draw::Degenerate(instance));
    }
    let source = RegularSource { field: field.clone(), point };
    rolle_check(&field, &f, &source, instance)
}

fn rolle_check(
    field: &PolyVectorField,
    f: &LaurentPolynomial,
    source: &dyn crate::series::GermSource,
    instance: Value,
) -> Result<Draw> {
    match rolle_order_check(field, f, source, &working_options()) {
        Ok(r) => {
            let relation = if r.singular {
                "ord(ξf|γ) >= ord(f|γ) at a singular point"
            } else {
                "ord(ξf|γ) >= ord(f|γ) - 1"
            };
            Ok(Draw::Done(
                vec![Check::new(relation, r.ord_xi_f.lower_bound(), r.required, r.pass)],
                instance,
            ))
        }
        Err(Error::Precondition(_)) => Ok(Draw::Degenerate(instance)),
        Err(e) => Err(e),
    }
}

fn rolle_singular_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let field = builtin::ramanujan_field();
    let source = builtin::ramanujan_source();
    let base = [num::rat(0), num::rat(1), num::rat(1), num::rat(1)];
    let deg = rng.gen_range(1..=spec.max_degree.max(1));
    let f = vanishing_poly(rng, 4, deg, &base)?;
    let instance = field_json(&field, &base, &f);
    if f.is_zero() {
        return Ok(Draw::Degenerate(instance));
    }
    rolle_check(&field, &f, &source, instance)
}

fn soundness_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n);
    let delta = rng.gen_range(1..=spec.max_delta);
    let d = rng.gen_range(1..=spec.max_degree.max(1));
    let Some((field, point)) = regular_instance(rng, n, delta)? else {
        return Ok(Draw::Degenerate(json!({ "n": n, "reason": "singular base point" })));
    };
    let p = if d >= 2 && rng.gen_bool(0.5) {
        let d1 = rng.gen_range(1..d);
        let a = vanishing_poly(rng, n, d1, &point)?;
        let b = vanishing_poly(rng, n, d - d1, &point)?;
        &a * &b
    } else {
        vanishing_poly(rng, n, d, &point)?
    };
    let instance = field_json(&field, &point, &p);
    if p.is_zero() {
        return Ok(Draw::Degenerate(instance));
    }
    let field_delta = field.degree().unwrap_or(0);
    let deg_p = p.total_degree()?;
    let bound = nmorse_bound(n as u64, field_delta, deg_p)?;
    let source = RegularSource { field, point };
    let relation = "mult <= 2^(n+1) (d + (n-1)δ)^n";
    Ok(match multiplicity(&p, &source, &working_options())? {
        MultiplicityResult::Exact(m) => Draw::Done(
            vec![Check::new(relation, m, &bound, BigInt::from(m) <= bound)],
            instance,
        ),
        MultiplicityResult::AtLeast(_) | MultiplicityResult::IdenticallyZeroSuspected(_) => {
            Draw::Degenerate(instance)
        }
    })
}

fn random_body(rng: &mut ChaCha8Rng, n: usize) -> Result<(Polytope, Vec<ExponentVector>)> {
    let count = rng.gen_range(2..=n + 3);
    let pts = random_points(rng, n, count, 2);
    Ok((Polytope::hull(&pts)?, pts))
}

fn mixed_volume_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n.min(3));
    let mut bodies = Vec::new();
    let mut raw = Vec::new();
    for _ in 0..=n {
        let (b, pts) = random_body(rng, n)?;
        bodies.push(b);
        raw.push(points_json(&pts));
    }
    let exec = Execution::Sequential;
    let first: Vec<&Polytope> = bodies[..n].iter().collect();
    let v = mixed_volume_with(&first, exec)?;
    let mut perm = first.clone();
    perm.shuffle(rng);
    let vp = mixed_volume_with(&perm, exec)?;
    let diag = mixed_volume_with(&vec![&bodies[0]; n], exec)?;
    let extra = &bodies[n];
    let sum = bodies[0].minkowski_sum(extra)?;
    let mut with_sum = first.clone();
    with_sum[0] = &sum;
    let mut with_extra = first.clone();
    with_extra[0] = extra;
    let lhs = mixed_volume_with(&with_sum, exec)?;
    let rhs = &v + mixed_volume_with(&with_extra, exec)?;
    let f = num::format_rational;
    let mut checks = vec![
        Check::new("V symmetric under permutation", f(&vp), f(&v), vp == v),
        Check::new("V(K, ..., K) = vol(K)", f(&diag), f(&bodies[0].volume()), diag == bodies[0].volume()),
        Check::new("V(K + L, ...) = V(K, ...) + V(L, ...)", f(&lhs), f(&rhs), lhs == rhs),
    ];
    if n >= 2 {
        let dz = Polytope::coordinate_simplex(n, &[0]);
        let mut twice: Vec<&Polytope> = vec![&dz, &dz];
        twice.extend(bodies[2..n].iter());
        let z = mixed_volume_with(&twice, exec)?;
        checks.push(Check::new("V(Δ_z, Δ_z, ...) = 0", f(&z), "0", z.is_zero()));
    }
    Ok(Draw::Done(checks, json!({ "n": n, "bodies": raw })))
}

fn random_laurent(rng: &mut ChaCha8Rng, n: usize) -> Result<LaurentPolynomial> {
    let count = rng.gen_range(1..=4);
    let pts = random_points(rng, n, count, 2);
    LaurentPolynomial::from_terms(n, pts.into_iter().map(|e| (e, num::rat(nonzero(rng, 9)))))
}

fn delta_additivity_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n);
    let p = random_laurent(rng, n)?;
    let q = random_laurent(rng, n)?;
    let pq = &p * &q;
    let lhs = pq.newton_polytope()?;
    let rhs = p.newton_polytope()?.minkowski_sum(&q.newton_polytope()?)?;
    let show = |x: &Polytope| serde_json::to_string(&x.to_json().vertices).expect("json");
    Ok(Draw::Done(
        vec![Check::new("Δ(PQ) = Δ(P) + Δ(Q)", show(&lhs), show(&rhs), lhs == rhs)],
        json!({ "n": n, "P": exprs(&[&p]), "Q": exprs(&[&q]) }),
    ))
}

fn hilbert_draw(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<Draw> {
    let n = rng.gen_range(1..=spec.max_n);
    let d = rng.gen_range(0..=spec.max_degree);
    let ambient = hf_ambient_pure(n as u64, d);
    let count = Polytope::standard_simplex(n).scale(d).lattice_count()?;
    let mut checks = vec![Check::new("hf(C^n, d) = #(dΔ_n ∩ Z^n)", &ambient, &count, ambient == count)];

    let (a, b) = loop {
        let a: i64 = rng.gen_range(1..=5);
        let b: i64 = rng.gen_range(1..=5);
        if a.gcd(&b) == 1 {
            break (a, b);
        }
    };
    let k = rng.gen_range(1..=4i64);
    let support = simplex_monomials(2, k);
    let curve = [
        UniPoly::monomial(a as usize, num::rat(1)),
        UniPoly::monomial(b as usize, num::rat(1)),
    ];
    let rank = hf_parametrized(&curve, &support)?;
    let deg_v = a.max(b);
    let upper = hf_upper_pure(&BigInt::from(deg_v), k as u64, 1);
    let width = monomial_curve_width(&[a, b], &support);
    checks.push(Check::new("hf(V, k) <= deg(V) k + 1", rank, &upper, BigInt::from(rank) <= upper));
    checks.push(Check::new("hf(V, A) <= tc(V) L_A + 1", rank, width, rank as i64 <= width));
    checks.push(Check::new("hf(V, A) <= |A|", rank, support.len(), rank <= support.len()));

    let general: Vec<UniPoly> = (0..2)
        .map(|_| {
            let deg = rng.gen_range(1..=3usize);
            UniPoly::new((0..=deg).map(|_| num::rat(rng.gen_range(-4..=4))).collect())
        })
        .collect();
    let instance = json!({
        "n": n,
        "d": d,
        "curve": [a, b],
        "k": k,
        "general": general.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if let Some(deg_g) = general.iter().filter_map(UniPoly::degree).max() {
        let r = hf_parametrized(&general, &support)?;
        let bound = hf_upper_pure(&BigInt::from(deg_g), k as u64, 1);
        checks.push(Check::new(
            "hf(g(C), k) <= deg(g) k + 1",
            r,
            &bound,
            BigInt::from(r) <= bound,
        ));
    }
    Ok(Draw::Done(checks, instance))
}
