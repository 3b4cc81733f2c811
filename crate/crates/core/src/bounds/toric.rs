//! Toric constants and the single-point toric bound.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use super::{big, exact, nmorse_raw, require, BoundReport, Theorem};
use crate::exec::Execution;
use crate::num::{self, Rational};
use crate::polytope::{mixed_volume_with, quermassintegral, Polytope};
use crate::{Error, Result};

/// `B_n = 2^4 n!`.
pub fn b_n(n: u64) -> BigInt {
    BigInt::from(16) * num::factorial(n as usize)
}

/// `(B_n, b_{n,δ})` with `b = N(n, δ, 2n B_n 2^n n δ)`.
pub fn b_const(n: u64, delta: u64) -> Result<(BigInt, BigInt)> {
    require(n >= 1, "n must be at least 1")?;
    require(delta >= 1, "δ must be at least 1")?;
    let bn = b_n(n);
    let delta_b = BigInt::from(delta);
    let arg = BigInt::from(2 * n)
        * &bn
        * num::pow(&BigInt::from(2), n as usize)
        * BigInt::from(n)
        * &delta_b;
    Ok((bn.clone(), nmorse_raw(n, &delta_b, &arg)))
}

/// `Δ_{n,ξ}` together with its integer scale factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledFieldPolytope {
    pub b_n: BigInt,
    pub b: BigInt,
    pub scale: BigInt,
    pub polytope: Polytope,
}

#[derive(Serialize)]
struct ScaledJson<'a> {
    #[serde(rename = "B_n", serialize_with = "num::serialize_bigint")]
    b_n: &'a BigInt,
    #[serde(serialize_with = "num::serialize_bigint")]
    b: &'a BigInt,
    #[serde(serialize_with = "num::serialize_bigint")]
    scale: &'a BigInt,
    polytope: crate::polytope::PolytopeJson,
}

impl ScaledFieldPolytope {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(ScaledJson {
            b_n: &self.b_n,
            b: &self.b,
            scale: &self.scale,
            polytope: self.polytope.to_json(),
        })
        .expect("serializable")
    }
}

/// `Δ_{n,ξ} = (B_n 2^n n + b_{n,δ}) Δ_ξ`.
pub fn delta_nxi(n: u64, delta: u64, xi: &Polytope) -> Result<ScaledFieldPolytope> {
    if !xi.contains_origin() {
        return Err(Error::OriginNotContained);
    }
    let (bn, b) = b_const(n, delta)?;
    let scale = &bn * num::pow(&BigInt::from(2), n as usize) * BigInt::from(n) + &b;
    Ok(ScaledFieldPolytope {
        polytope: xi.scale_by(&scale),
        b_n: bn,
        b,
        scale,
    })
}

pub(crate) fn check_integral(p: &Polytope) -> Result<()> {
    if p.is_integral() {
        Ok(())
    } else {
        Err(Error::NonIntegral)
    }
}

/// The refined and coarse toric quantities of a body `K` in dimension `n`.
pub(crate) struct ToricTerms {
    pub vol: Rational,
    pub w1: Rational,
    pub refined: Rational,
    pub coarse: Rational,
}

pub(crate) fn toric_terms(k: &Polytope, chi: u64) -> Result<ToricTerms> {
    let n = k.dim();
    let nf = Rational::from_integer(num::factorial(n));
    let vol = k.volume();
    let w1 = quermassintegral(k, 1)?;
    let refined = &nf * &vol + &nf * Rational::from_integer(BigInt::from(2 + chi)) * &w1;
    let coarse = &nf * Rational::from_integer(BigInt::from(3 + chi)) * &vol;
    Ok(ToricTerms {
        vol,
        w1,
        refined,
        coarse,
    })
}

/// Toric bound: `n! vol(K) + n!(2+χ) W_1(K)` with `K = Δ + Δ_{n,ξ}`.
pub fn toric_bound(
    n: u64,
    delta: u64,
    newton: &Polytope,
    xi: &Polytope,
    chi: u64,
) -> Result<BoundReport> {
    toric_bound_with(n, delta, newton, xi, chi, Execution::default())
}

pub(crate) fn toric_bound_with(
    n: u64,
    delta: u64,
    newton: &Polytope,
    xi: &Polytope,
    chi: u64,
    exec: Execution,
) -> Result<BoundReport> {
    require(n >= 1, "n must be at least 1")?;
    for p in [newton, xi] {
        if p.dim() as u64 != n {
            return Err(Error::DimensionMismatch {
                expected: n as usize,
                found: p.dim(),
            });
        }
    }
    check_integral(newton)?;
    check_integral(xi)?;
    let scaled = delta_nxi(n, delta, xi)?;
    let k = newton.minkowski_sum(&scaled.polytope)?;
    let terms = toric_terms(&k, chi)?;
    let nu = n as usize;
    let nf = Rational::from_integer(num::factorial(nu));
    let simplex = Polytope::standard_simplex(nu);
    let n_w1 = &nf * &terms.w1;
    let mut lhs = Vec::new();
    for j in 1..=nu {
        let mut bodies: Vec<&Polytope> = vec![&k; nu - j];
        bodies.extend(std::iter::repeat_n(&simplex, j));
        let v = &nf * mixed_volume_with(&bodies, exec)?;
        lhs.push(serde_json::json!({
            "k": j,
            "(L_K)^(n-k)(L_Delta_x)^k": exact(&v),
            "holds": v <= n_w1,
        }));
    }
    let mut r = BoundReport::new(Theorem::Toric);
    r.input("n", n)
        .input("delta", delta)
        .input("chi", chi)
        .input("Delta", serde_json::to_value(newton.to_json()).expect("json"))
        .input("Delta_xi", serde_json::to_value(xi.to_json()).expect("json"));
    r.constant("B_n", big(&scaled.b_n))
        .constant("b", big(&scaled.b))
        .constant("scale", big(&scaled.scale))
        .constant("Delta_n_xi", serde_json::to_value(scaled.polytope.to_json()).expect("json"))
        .constant("K", serde_json::to_value(k.to_json()).expect("json"))
        .constant("vol(K)", exact(&terms.vol))
        .constant("W_1(K)", exact(&terms.w1))
        .constant("n!vol(K)", exact(&(&nf * &terms.vol)))
        .constant("n!W_1(K)", exact(&n_w1))
        .constant("mixed_terms", Value::Array(lhs))
        .constant("refined", big(&num::ceil(&terms.refined)))
        .constant("coarse", big(&num::ceil(&terms.coarse)));
    if terms.refined > terms.coarse {
        r.notes
            .push("W_1(K) exceeds vol(K): the refined value is larger than the coarse one".into());
    }
    if terms.vol.is_zero() {
        r.notes.push("K is not full-dimensional: only the W_1 term contributes".into());
    }
    r.value = num::ceil(&terms.refined);
    Ok(r)
}

/// Toric degree threshold: `tc(V) (L_{Δ_d})^k <= B_n^{-1} (L_{Δ_d})^n`, with
/// `(L_{Δ_d})^j` read as `n! V(Δ_d^j, ...)` and `tc(V)` supplied as a
/// rational multiple of `(L_{Δ_d})^{n-k}`.
pub fn toric_hf_finder_threshold(delta_d: &Polytope, tc_times_lk: &Rational) -> Result<bool> {
    let n = delta_d.dim();
    require(n >= 1, "dimension must be at least 1")?;
    check_integral(delta_d)?;
    let top = Rational::from_integer(num::factorial(n)) * delta_d.volume();
    Ok(tc_times_lk * Rational::from_integer(b_n(n as u64)) <= top)
}
