//! Builtin example systems.

use crate::algebra::{parse_polynomial, LaurentPolynomial, PolyVectorField};
use crate::num::{rat, Rational};
use crate::series::{
    FixedGerm, FuchsianSource, FuchsianSystem, GermForm, Pins, RegularSource, TrajectoryGerm,
};
use crate::Result;

/// The D-property constant of the Ramanujan system at `z = 0`.
pub const RAMANUJAN_CHI: u64 = 2;

pub const NAMES: [&str; 4] = ["ramanujan", "parabola", "power-a", "linear-diagonal"];

pub fn ramanujan_variables() -> Vec<String> {
    ["z", "X", "Y", "R"].iter().map(|s| s.to_string()).collect()
}

pub const RAMANUJAN_COMPONENTS: [&str; 4] = ["z", "(X^2 - Y)/12", "(X*Y - R)/3", "(X*R - Y^2)/2"];

/// `z∂z + (X²-Y)/12 ∂X + (XY-R)/3 ∂Y + (XR-Y²)/2 ∂R`.
pub fn ramanujan_field() -> PolyVectorField {
    let vars = ramanujan_variables();
    let comps = RAMANUJAN_COMPONENTS
        .iter()
        .map(|s| parse_polynomial(s, &vars).expect("builtin"))
        .collect();
    PolyVectorField::new(comps, Some(0)).expect("builtin")
}

pub fn ramanujan_system() -> FuchsianSystem {
    FuchsianSystem::from_field(&ramanujan_field()).expect("builtin")
}

/// Order 1 is resonant (`1` is an eigenvalue of the Jacobian at `(1,1,1)`);
/// the Eisenstein normalization fixes the `X` coefficient to `-24`.
pub fn ramanujan_pins() -> Pins {
    Pins::from([(1, vec![Some(rat(-24)), None, None])])
}

pub fn ramanujan_source() -> FuchsianSource {
    FuchsianSource {
        system: ramanujan_system(),
        x0: vec![rat(1); 3],
        pins: ramanujan_pins(),
    }
}

/// `(t, P, Q, R)` through `(0, 1, 1, 1)`.
pub fn ramanujan_germ(order: usize) -> Result<TrajectoryGerm> {
    use crate::series::GermSource;
    ramanujan_source().germ(order)
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn field(srcs: &[&str], vars: &[String], time: Option<usize>) -> PolyVectorField {
    let comps: Vec<LaurentPolynomial> = srcs
        .iter()
        .map(|s| parse_polynomial(s, vars).expect("builtin"))
        .collect();
    PolyVectorField::new(comps, time).expect("builtin")
}

/// `∂x + 2x ∂y`, regular at the origin with trajectory `(t, t²)`.
pub fn parabola_field() -> PolyVectorField {
    field(&["1", "2*x"], &xy(), None)
}

pub fn parabola_source() -> RegularSource {
    RegularSource {
        field: parabola_field(),
        point: vec![rat(0), rat(0)],
    }
}

/// `x∂x + a y∂y`, singular at the origin, where `{y = x^a}` is invariant.
pub fn power_a_field(a: i64) -> PolyVectorField {
    let a_y = format!("{a}*y");
    field(&["x", &a_y], &xy(), Some(0))
}

/// The graph germ `(t, t^a)` of `{y = x^a}`.
pub fn power_a_germ(a: usize, order: usize) -> Result<TrajectoryGerm> {
    let mut y: Vec<Rational> = vec![rat(0); a + 1];
    y[a] = rat(1);
    TrajectoryGerm::from_polynomials(
        &[vec![rat(0), rat(1)], y],
        order,
        GermForm::Graph { time_index: 0 },
    )
}

pub fn power_a_source(a: usize, order: usize) -> Result<FixedGerm> {
    Ok(FixedGerm(power_a_germ(a, order)?))
}

/// `x∂x + 2y∂y` at `(1, 1)`, with flow `(e^t, e^{2t})`.
pub fn linear_diagonal_field() -> PolyVectorField {
    field(&["x", "2*y"], &xy(), None)
}

pub fn linear_diagonal_source() -> RegularSource {
    RegularSource {
        field: linear_diagonal_field(),
        point: vec![rat(1), rat(1)],
    }
}
