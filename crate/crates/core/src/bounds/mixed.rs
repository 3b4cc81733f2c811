//! Bounds for fields with a distinguished time variable `z`, in terms of the
//! bidegree `(d_z, d_x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::toric::{check_integral, delta_nxi, toric_terms};
use super::{big, exact, require, BoundReport, Theorem};
use crate::algebra::PolyVectorField;
use crate::exec::Execution;
use crate::num::{self, Rational};
use crate::polytope::{mixed_volume_with, Polytope};
use crate::{Error, Result};

/// Field data entering the mixed-degree bounds: `δ`, `Δ_ξ` (containing the
/// origin) and the index of the time coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldData {
    pub delta: u64,
    pub xi: Polytope,
    pub time_index: usize,
}

impl FieldData {
    pub fn new(delta: u64, xi: Polytope, time_index: usize) -> Result<Self> {
        if time_index >= xi.dim() {
            return Err(Error::InvalidIndex {
                index: time_index,
                dim: xi.dim(),
            });
        }
        if !xi.contains_origin() {
            return Err(Error::OriginNotContained);
        }
        check_integral(&xi)?;
        Ok(FieldData {
            delta,
            xi,
            time_index,
        })
    }

    /// Uses the origin-adjusted `Δ_ξ` and the field's degree.
    pub fn from_field(field: &PolyVectorField) -> Result<Self> {
        let time_index = field
            .time_index()
            .ok_or_else(|| Error::Precondition("field has no time variable".into()))?;
        let delta = field
            .degree()
            .ok_or_else(|| Error::Precondition("field must be polynomial".into()))?;
        let fp = field.field_polytope()?;
        FieldData::new(delta.max(1), fp.adjusted, time_index)
    }

    /// The trivial field data `Δ_ξ = {0}` in dimension `n + 1`.
    pub fn trivial(n: usize, delta: u64, time_index: usize) -> Result<Self> {
        FieldData::new(delta, Polytope::origin(n + 1), time_index)
    }

    pub fn ambient(&self) -> usize {
        self.xi.dim()
    }

    fn delta_z(&self) -> Polytope {
        Polytope::coordinate_simplex(self.ambient(), &[self.time_index])
    }

    fn delta_x(&self) -> Polytope {
        let axes: Vec<usize> = (0..self.ambient()).filter(|&i| i != self.time_index).collect();
        Polytope::coordinate_simplex(self.ambient(), &axes)
    }

    /// `Q = d_x Δ_x + d_z Δ_z`.
    fn q_polytope(&self, d_z: u64, d_x: u64) -> Result<Polytope> {
        self.delta_x().scale(d_x).minkowski_sum(&self.delta_z().scale(d_z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    A,
    B,
}

fn check_n(n: u64, field: &FieldData) -> Result<usize> {
    require(n >= 1, "n must be at least 1")?;
    let big_n = n as usize + 1;
    if field.ambient() != big_n {
        return Err(Error::DimensionMismatch {
            expected: big_n,
            found: field.ambient(),
        });
    }
    Ok(big_n)
}

fn field_inputs(r: &mut BoundReport, n: u64, field: &FieldData) {
    r.input("n", n)
        .input("delta", field.delta)
        .input("time_index", field.time_index)
        .input("Delta_xi", serde_json::to_value(field.xi.to_json()).expect("json"));
}

fn pow_u(base: u64, e: usize) -> BigInt {
    num::pow(&BigInt::from(base), e)
}

fn whole(r: &Rational) -> BigInt {
    num::ceil(r)
}

/// Single-polynomial mixed bound: `α d_z d_x^n` with `α = N c^n (c + 2 + χ)`, `N = n + 1`,
/// `c = 1 + 2n deg_Π(Δ_{N,ξ})`.
pub fn mixed_single_bound(
    n: u64,
    field: &FieldData,
    d_z: u64,
    d_x: u64,
    chi: u64,
) -> Result<BoundReport> {
    let big_n = check_n(n, field)?;
    require(d_z >= 1 && d_x >= 1, "d_z and d_x must be at least 1")?;
    let scaled = delta_nxi(big_n as u64, field.delta, &field.xi)?;
    let deg_pi = scaled.polytope.pi_degree();
    let c = BigInt::one() + BigInt::from(2 * n) * &deg_pi;
    let alpha = BigInt::from(big_n) * num::pow(&c, n as usize) * (&c + BigInt::from(2 + chi));
    let monomial = BigInt::from(d_z) * pow_u(d_x, n as usize);

    let q = field.q_polytope(d_z, d_x)?;
    let k = q.minkowski_sum(&scaled.polytope)?;
    let terms = toric_terms(&k, chi)?;
    let nf = Rational::from_integer(num::factorial(big_n));
    let proof_line = &nf
        * Rational::from_integer(BigInt::from(3 + chi))
        * Rational::from_integer(deg_pi.clone())
        * q.volume();

    let mut r = BoundReport::new(Theorem::MixedSingle);
    field_inputs(&mut r, n, field);
    r.input("d_z", d_z).input("d_x", d_x).input("chi", chi);
    r.constant("N", json!(big_n))
        .constant("B_N", big(&scaled.b_n))
        .constant("b", big(&scaled.b))
        .constant("scale", big(&scaled.scale))
        .constant("deg_Pi(Delta_N_xi)", big(&deg_pi))
        .constant("c", big(&c))
        .constant("alpha", big(&alpha))
        .constant("d_z*d_x^n", big(&monomial))
        .constant("vol(Q)", exact(&q.volume()))
        .constant("toric_on_Q", big(&whole(&terms.refined)))
        .constant("coarse_on_Q", big(&whole(&terms.coarse)))
        .constant("proof_line", big(&whole(&proof_line)));
    r.notes.push(
        "alpha comes from Q + Δ_{N,ξ} ⊆ cQ up to translation and W_1(Q) <= vol(Q)".into(),
    );
    r.value = alpha * monomial;
    Ok(r)
}

/// `N! V(...)` coefficients of `d_z d_x^{k-1}` and `d_x^k` after expanding
/// `Q^k` multilinearly, together with the check that two `Δ_z` entries vanish.
struct Expansion {
    c_z: BigInt,
    c_x: BigInt,
    double_z_vanishes: bool,
}

fn expand(
    field: &FieldData,
    k: usize,
    rest: &[&Polytope],
    exec: Execution,
) -> Result<Expansion> {
    let dz = field.delta_z();
    let dx = field.delta_x();
    let nf = Rational::from_integer(num::factorial(field.ambient()));
    let eval = |j: usize| -> Result<Rational> {
        let mut bodies: Vec<&Polytope> = Vec::with_capacity(field.ambient());
        bodies.extend(std::iter::repeat_n(&dz, j));
        bodies.extend(std::iter::repeat_n(&dx, k - j));
        bodies.extend_from_slice(rest);
        Ok(&nf * mixed_volume_with(&bodies, exec)?)
    };
    let c_x = eval(0)?;
    let c_z = if k >= 1 {
        eval(1)? * Rational::from_integer(BigInt::from(k))
    } else {
        Rational::zero()
    };
    let double_z_vanishes = k < 2 || eval(2)?.is_zero();
    Ok(Expansion {
        c_z: whole(&c_z),
        c_x: whole(&c_x),
        double_z_vanishes,
    })
}

/// `β_1 = 1 + max(w_z, w_x)` from the widths of the translated `Δ_{N,ξ}`,
/// and the tight value for the given `Q`, both checked by containment.
struct BetaOne {
    generic: BigInt,
    tight: BigInt,
    contained: bool,
}

fn beta_one(field: &FieldData, scaled: &Polytope, q: &Polytope, d_z: u64, d_x: u64) -> Result<BetaOne> {
    let dim = field.ambient();
    let lo: Vec<Rational> = (0..dim)
        .map(|i| {
            scaled
                .vertices()
                .iter()
                .map(|v| v[i].clone())
                .min()
                .unwrap_or_default()
        })
        .collect();
    let shift: Vec<Rational> = lo.iter().map(|x| -x).collect();
    let moved = scaled.translate(&shift)?;
    let t = field.time_index;
    let w_z = moved.vertices().iter().map(|v| v[t].clone()).max().unwrap_or_default();
    let w_x = moved
        .vertices()
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|&(i, _)| i != t)
                .fold(Rational::zero(), |a, (_, x)| a + x)
        })
        .max()
        .unwrap_or_default();
    let generic = BigInt::one() + whole(&w_z).max(whole(&w_x));
    let sum = q.minkowski_sum(&moved)?;
    let ratio_z = (Rational::from_integer(BigInt::from(d_z)) + &w_z) / num::rat(d_z as i64);
    let ratio_x = (Rational::from_integer(BigInt::from(d_x)) + &w_x) / num::rat(d_x as i64);
    let tight = whole(&ratio_z).max(whole(&ratio_x));
    let contained = q.scale_by(&tight).contains_polytope(&sum)
        && q.scale_by(&generic).contains_polytope(&sum)
        && (tight <= BigInt::one() || !q.scale_by(&(&tight - 1)).contains_polytope(&sum));
    Ok(BetaOne {
        generic,
        tight,
        contained,
    })
}

/// Level sums shared by the multi-point and case A/B bounds.
struct Levels {
    beta_z: BigInt,
    beta_x: BigInt,
    beta_q: BigInt,
    tilde: Vec<Value>,
    hat: Vec<Value>,
    exact_sum: BigInt,
    double_z_vanishes: bool,
}

/// Levels of a dimension-`m` cycle inside the codimension-`c` cap
/// `D^c E^c`; `m = N`, `c = 0` is the full multi-point setting.
#[allow(clippy::too_many_arguments)]
fn levels(
    field: &FieldData,
    beta1: &BigInt,
    m: usize,
    cap: Option<(&Polytope, u64)>,
    d_z: u64,
    d_x: u64,
    q: u64,
    exec: Execution,
) -> Result<Levels> {
    let dz = field.delta_z();
    let dx = field.delta_x();
    let zx = dz.minkowski_sum(&dx)?;
    let (cap_body, codim, d_factor) = match cap {
        Some((e, d)) => (Some(e), field.ambient() - m, pow_u(d, field.ambient() - m)),
        None => (None, 0, BigInt::one()),
    };
    let mut out = Levels {
        beta_z: BigInt::zero(),
        beta_x: BigInt::zero(),
        beta_q: BigInt::zero(),
        tilde: Vec::new(),
        hat: Vec::new(),
        exact_sum: BigInt::zero(),
        double_z_vanishes: true,
    };
    for k in 1..=m {
        let mut rest: Vec<&Polytope> = Vec::new();
        if let Some(e) = cap_body {
            rest.extend(std::iter::repeat_n(e, codim));
        }
        rest.extend(std::iter::repeat_n(&dx, m - k));
        let ex = expand(field, k, &rest, exec)?;
        let w = num::pow(beta1, k) * &d_factor;
        let cz = &w * &ex.c_z;
        let cx = &w * &ex.c_x;
        let value = &cz * BigInt::from(d_z) * pow_u(d_x, k - 1) + &cx * pow_u(d_x, k);
        out.double_z_vanishes &= ex.double_z_vanishes;
        out.beta_z += &cz;
        out.beta_x += &cx;
        out.exact_sum += &value;
        out.tilde.push(json!({
            "k": k,
            "coeff_dz_dx^(k-1)": cz.to_string(),
            "coeff_dx^k": cx.to_string(),
            "value": value.to_string(),
        }));
    }
    for k in 1..m {
        let mut rest: Vec<&Polytope> = Vec::new();
        if let Some(e) = cap_body {
            rest.extend(std::iter::repeat_n(e, codim));
        }
        rest.push(&dz);
        rest.extend(std::iter::repeat_n(&zx, m - 1 - k));
        let ex = expand(field, k, &rest, exec)?;
        out.double_z_vanishes &= ex.c_z.is_zero();
        let w = num::pow(beta1, k) * &d_factor;
        let cx = &w * &ex.c_x;
        let value = &cx * pow_u(d_x, k) * BigInt::from(q);
        out.beta_q += &cx;
        out.exact_sum += &value;
        out.hat.push(json!({
            "k": k,
            "coeff_q*dx^k": cx.to_string(),
            "value": value.to_string(),
        }));
    }
    Ok(out)
}

fn weight(chi: u64) -> BigInt {
    BigInt::from(chi.max(1))
}

/// Multi-polynomial mixed bound: `w (β_2 d_z d_x^n + q β_3 d_x^n)` with `w = max(1, χ)`.
pub fn mixed_multi_bound(
    n: u64,
    field: &FieldData,
    d_z: u64,
    d_x: u64,
    q: u64,
    chi: u64,
) -> Result<BoundReport> {
    let big_n = check_n(n, field)?;
    require(d_z >= 1 && d_x >= 1, "d_z and d_x must be at least 1")?;
    require(q >= 1, "q must be at least 1")?;
    let exec = Execution::default();
    let scaled = delta_nxi(big_n as u64, field.delta, &field.xi)?;
    let qp = field.q_polytope(d_z, d_x)?;
    let b1 = beta_one(field, &scaled.polytope, &qp, d_z, d_x)?;
    let lv = levels(field, &b1.generic, big_n, None, d_z, d_x, q, exec)?;
    let beta2 = &lv.beta_z + &lv.beta_x;
    let beta3 = lv.beta_q.clone();
    let w = weight(chi);
    let dxn = pow_u(d_x, n as usize);
    let value = &w * (&beta2 * BigInt::from(d_z) * &dxn + BigInt::from(q) * &beta3 * &dxn);
    let single = mixed_single_bound(n, field, d_z, d_x, chi)?;

    let mut r = BoundReport::new(Theorem::MixedMulti);
    field_inputs(&mut r, n, field);
    r.input("d_z", d_z).input("d_x", d_x).input("q", q).input("chi", chi);
    r.constant("N", json!(big_n))
        .constant("scale", big(&scaled.scale))
        .constant("beta_1", big(&b1.generic))
        .constant("beta_1_tight", big(&b1.tight))
        .constant("beta_1_containment_verified", json!(b1.contained))
        .constant("beta_2", big(&beta2))
        .constant("beta_3", big(&beta3))
        .constant("w", big(&w))
        .constant("tilde_levels", Value::Array(lv.tilde))
        .constant("hat_levels", Value::Array(lv.hat))
        .constant("level_sum", big(&(&w * &lv.exact_sum)))
        .constant("double_Delta_z_vanishes", json!(lv.double_z_vanishes))
        .constant("mixed_single_value", big(&single.value));
    r.value = value;
    Ok(r)
}

/// Inputs of the case A/B bound for a cycle `Z` of dimension `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseAbInput {
    pub m: u64,
    pub case: Case,
    /// Degree `D` of the generators of `Z`.
    pub generator_degree: u64,
    pub d_z: u64,
    pub d_x: u64,
    pub q: u64,
    pub chi: u64,
    /// Truncation level for the Hilbert-function lower bound; defaults to
    /// `max(d_z, d_x)`.
    pub d: Option<u64>,
}

/// Bounds for cases A and B: `β (d_z + q) d_x^{m-1}` (case A) or `β (d_z + d_x + q) d_x^{m-1}`
/// (case B).
pub fn caseab_bound(n: u64, field: &FieldData, input: &CaseAbInput) -> Result<BoundReport> {
    let big_n = check_n(n, field)?;
    let CaseAbInput {
        m,
        case,
        generator_degree: dd,
        d_z,
        d_x,
        q,
        chi,
        d,
    } = *input;
    require(m >= 1 && m as usize <= big_n, "m must lie in 1..=n+1")?;
    require(dd >= 1, "D must be at least 1")?;
    require(d_z >= 1 && d_x >= 1, "d_z and d_x must be at least 1")?;
    require(q >= 1, "q must be at least 1")?;
    let exec = Execution::default();
    let mu = m as usize;
    let scaled = delta_nxi(big_n as u64, field.delta, &field.xi)?;
    let qp = field.q_polytope(d_z, d_x)?;
    let b1 = beta_one(field, &scaled.polytope, &qp, d_z, d_x)?;
    let e = match case {
        Case::A => field.delta_x(),
        Case::B => field.delta_x().minkowski_sum(&field.delta_z())?,
    };
    let lv = levels(field, &b1.generic, mu, Some((&e, dd)), d_z, d_x, q, exec)?;
    if case == Case::A && !lv.beta_x.is_zero() {
        return Err(Error::Precondition("case A produced a pure d_x^m term".into()));
    }
    let w = weight(chi);
    let beta = &w * lv.beta_z.clone().max(lv.beta_x.clone()).max(lv.beta_q.clone());
    let shape = match case {
        Case::A => BigInt::from(d_z + q),
        Case::B => BigInt::from(d_z + d_x + q),
    };
    let value = &beta * shape * pow_u(d_x, mu - 1);

    let dtrunc = d.unwrap_or(d_z.max(d_x));
    let dz1 = d_z.min(dtrunc);
    let dx1 = d_x.min(dtrunc);
    let base = BigInt::from(dz1) * pow_u(dx1, mu - 1);
    let lead = match case {
        Case::A => base,
        Case::B => base.max(pow_u(dx1, mu)),
    };
    let hf_lower = Rational::new(lead, num::factorial(mu));
    let codim = big_n - mu;
    let tc_cap = match qp.truncate_to_box(dtrunc) {
        Some(qd) => {
            let mut bodies: Vec<&Polytope> = vec![&qd; mu];
            bodies.extend(std::iter::repeat_n(&e, codim));
            let v = Rational::from_integer(num::factorial(big_n) * pow_u(dd, codim))
                * mixed_volume_with(&bodies, exec)?;
            exact(&v)
        }
        None => Value::Null,
    };

    let mut r = BoundReport::new(match case {
        Case::A => Theorem::CaseA,
        Case::B => Theorem::CaseB,
    });
    field_inputs(&mut r, n, field);
    r.input("m", m)
        .input("case", serde_json::to_value(case).expect("json"))
        .input("D", dd)
        .input("d_z", d_z)
        .input("d_x", d_x)
        .input("q", q)
        .input("chi", chi)
        .input("d", dtrunc);
    r.constant("N", json!(big_n))
        .constant("codim", json!(codim))
        .constant("scale", big(&scaled.scale))
        .constant("beta_1", big(&b1.generic))
        .constant("beta_1_tight", big(&b1.tight))
        .constant("beta_1_containment_verified", json!(b1.contained))
        .constant("beta_z", big(&lv.beta_z))
        .constant("beta_x", big(&lv.beta_x))
        .constant("beta_q", big(&lv.beta_q))
        .constant("w", big(&w))
        .constant("beta", big(&beta))
        .constant("tilde_levels", Value::Array(lv.tilde))
        .constant("hat_levels", Value::Array(lv.hat))
        .constant("level_sum", big(&(&w * &lv.exact_sum)))
        .constant("double_Delta_z_vanishes", json!(lv.double_z_vanishes))
        .constant("d'_z", json!(dz1))
        .constant("d'_x", json!(dx1))
        .constant("hf_lower", exact(&hf_lower))
        .constant("tc_cap", tc_cap);
    if codim == 0 {
        r.notes
            .push("m = n+1: no codimension cap, the level structure is the multi-point one".into());
    }
    r.value = value;
    Ok(r)
}
