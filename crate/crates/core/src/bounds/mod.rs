//! Explicit multiplicity bounds with every intermediate constant
//! materialized.
//!
//! All arithmetic is exact; rational quantities are rounded up only when the
//! final integer bound is formed.

mod mixed;
mod toric;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::num::{self, Rational};
use crate::{Error, Result};

pub use mixed::{caseab_bound, mixed_multi_bound, mixed_single_bound, Case, CaseAbInput, FieldData};
pub use toric::{b_const, b_n, delta_nxi, toric_bound, toric_hf_finder_threshold, ScaledFieldPolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `2^{n+1}(d + (n-1)δ)^n` for regular points.
    Nmorse,
    /// `(d+ã)^n + (2+χ)(d+ã)^{n-1}`.
    Pure,
    /// `n! vol(K) + n!(2+χ) W_1(K)` with `K = Δ + Δ_{n,ξ}`.
    Toric,
    /// `α d_z d_x^n`.
    MixedSingle,
    /// `β (d_z + q) d_x^n`.
    MixedMulti,
    /// `β (d_z + q) d_x^{m-1}`.
    CaseA,
    /// `β (d_z + d_x + q) d_x^{m-1}`.
    CaseB,
}

/// A bound evaluation: inputs and intermediate constants keyed by their
/// usual symbols, and the final integer value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub inputs: BTreeMap<String, Value>,
    pub constants: BTreeMap<String, Value>,
    #[serde(serialize_with = "num::serialize_bigint")]
    pub value: BigInt,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub(crate) fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub(crate) fn exact(v: &Rational) -> Value {
    Value::String(num::format_rational(v))
}

impl BoundReport {
    pub(crate) fn new(theorem: Theorem) -> Self {
        BoundReport {
            theorem,
            inputs: BTreeMap::new(),
            constants: BTreeMap::new(),
            value: BigInt::zero(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub(crate) fn constant(&mut self, key: &str, v: Value) -> &mut Self {
        self.constants.insert(key.into(), v);
        self
    }

    /// A named integer constant, if present.
    pub fn integer(&self, key: &str) -> Option<BigInt> {
        match self.constants.get(key)? {
            Value::String(s) => s.parse().ok(),
            Value::Number(n) => n.as_i64().map(BigInt::from),
            _ => None,
        }
    }

    /// A named rational constant, if present.
    pub fn rational(&self, key: &str) -> Option<Rational> {
        match self.constants.get(key)? {
            Value::String(s) => num::parse_rational(s).ok(),
            Value::Number(n) => n.as_i64().map(num::rat),
            _ => None,
        }
    }
}

pub(crate) fn require(cond: bool, what: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Range(what.into()))
    }
}

/// `N(n, δ, d) = 2^{n+1} (d + (n-1)δ)^n` without range checks.
pub(crate) fn nmorse_raw(n: u64, delta: &BigInt, d: &BigInt) -> BigInt {
    let base = d + BigInt::from(n - 1) * delta;
    num::pow(&BigInt::from(2), n as usize + 1) * num::pow(&base, n as usize)
}

/// Bound at regular points: `2^{n+1}(d+(n-1)δ)^n`.
pub fn nmorse_bound(n: u64, delta: u64, d: u64) -> Result<BigInt> {
    require(n >= 1, "n must be at least 1")?;
    require(d >= 1, "d must be at least 1")?;
    Ok(nmorse_raw(n, &BigInt::from(delta), &BigInt::from(d)))
}

/// `A_n = 2 n!`.
pub fn a_n(n: u64) -> BigInt {
    BigInt::from(2) * num::factorial(n as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AConst {
    #[serde(rename = "A_n", serialize_with = "num::serialize_bigint")]
    pub a_n: BigInt,
    /// The argument `A_n 2^n n δ` fed to `N`.
    #[serde(serialize_with = "num::serialize_bigint")]
    pub argument: BigInt,
    #[serde(serialize_with = "num::serialize_bigint")]
    pub a: BigInt,
    #[serde(rename = "a_tilde", serialize_with = "num::serialize_bigint")]
    pub a_tilde: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `(A_n, a_{n,δ}, ã_{n,δ})` with `a = N(n, δ, A_n 2^n n δ)` and `ã = δ a`.
pub fn a_const(n: u64, delta: u64) -> Result<AConst> {
    require(n >= 1, "n must be at least 1")?;
    let an = a_n(n);
    let delta_b = BigInt::from(delta);
    let argument = &an * num::pow(&BigInt::from(2), n as usize) * BigInt::from(n) * &delta_b;
    let a = nmorse_raw(n, &delta_b, &argument);
    let a_tilde = &delta_b * &a;
    let note = (delta == 0)
        .then(|| "δ = 0: the field is constant, so a = ã = 0 and the chain degenerates".to_string());
    Ok(AConst {
        a_n: an,
        argument,
        a,
        a_tilde,
        note,
    })
}

/// `[(d + ã)^k for k = 1..=n]`.
pub fn forest_degree_profile(n: u64, delta: u64, d: u64) -> Result<Vec<BigInt>> {
    require(d >= 1, "d must be at least 1")?;
    let c = a_const(n, delta)?;
    let base = BigInt::from(d) + &c.a_tilde;
    Ok((1..=n as usize).map(|k| num::pow(&base, k)).collect())
}

/// Pure bound: `(d+ã)^n + (2+χ)(d+ã)^{n-1}`.
pub fn pure_bound(n: u64, delta: u64, d: u64, chi: u64) -> Result<BoundReport> {
    let c = a_const(n, delta)?;
    let profile = forest_degree_profile(n, delta, d)?;
    let top = profile[n as usize - 1].clone();
    let below = if n >= 2 {
        profile[n as usize - 2].clone()
    } else {
        BigInt::one()
    };
    let value = &top + BigInt::from(2 + chi) * &below;
    let mut r = BoundReport::new(Theorem::Pure);
    r.input("n", n).input("delta", delta).input("d", d).input("chi", chi);
    r.constant("A_n", big(&c.a_n))
        .constant("A_n*2^n*n*delta", big(&c.argument))
        .constant("a", big(&c.a))
        .constant("a_tilde", big(&c.a_tilde))
        .constant("d+a_tilde", big(&(BigInt::from(d) + &c.a_tilde)))
        .constant(
            "profile",
            Value::Array(profile.iter().map(big).collect()),
        );
    if let Some(note) = c.note {
        r.notes.push(note);
    }
    r.value = value;
    Ok(r)
}

/// `hf(C^n, t) = binom(t + n, n)`.
pub fn hf_ambient_pure(n: u64, t: u64) -> BigInt {
    num::binomial(t + n, n)
}

/// Hilbert function upper bound: `deg(V) t^k + k`.
pub fn hf_upper_pure(deg_v: &BigInt, t: u64, k: u64) -> BigInt {
    deg_v * num::pow(&BigInt::from(t), k as usize) + BigInt::from(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub holds: bool,
    #[serde(serialize_with = "num::serialize_rational")]
    pub threshold: Rational,
    pub note: String,
}

/// Degree threshold: `deg V <= A_n^{-1} d^{n-k}` (requires `d > 2n`).
pub fn hf_finder_threshold(n: u64, d: u64, deg_v: &BigInt, k: u64) -> Result<ThresholdReport> {
    require(n >= 1, "n must be at least 1")?;
    require(d > 2 * n, "the threshold lemma needs d > 2n")?;
    require(k <= n, "k must not exceed n")?;
    let threshold = Rational::new(num::pow(&BigInt::from(d), (n - k) as usize), a_n(n));
    Ok(ThresholdReport {
        holds: Rational::from_integer(deg_v.clone()) <= threshold,
        threshold,
        note: "uses the exponent n-k of the lemma statement; its later application writes n-l"
            .into(),
    })
}

#[cfg(test)]
mod tests;
