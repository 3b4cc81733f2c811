//! The multiplicity oracle and trajectory-level order checks.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{LaurentPolynomial, PolyVectorField};
use crate::exec::Execution;
use crate::num::Rational;
use crate::series::{compose, GermSource};
use crate::{Error, Result};

/// Environment variable overriding the default escalation cap.
pub const MAX_ORDER_ENV: &str = "MULTBOUND_MAX_ORDER";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiplicityResult {
    /// The composed series has its first nonzero coefficient here.
    Exact(usize),
    /// Every coefficient below this value vanishes and no further order was
    /// available (a fixed-order germ, or the cap given by a bound).
    AtLeast(usize),
    /// Every coefficient through the default cap vanishes.
    IdenticallyZeroSuspected(usize),
}

impl MultiplicityResult {
    pub fn exact(self) -> Option<usize> {
        match self {
            MultiplicityResult::Exact(k) => Some(k),
            _ => None,
        }
    }

    /// A guaranteed lower bound on the multiplicity.
    pub fn lower_bound(self) -> usize {
        match self {
            MultiplicityResult::Exact(k) | MultiplicityResult::AtLeast(k) => k,
            MultiplicityResult::IdenticallyZeroSuspected(cap) => cap + 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            MultiplicityResult::Exact(_) => "exact",
            MultiplicityResult::AtLeast(_) => "at_least",
            MultiplicityResult::IdenticallyZeroSuspected(_) => "identically_zero_suspected",
        }
    }

    fn value(self) -> usize {
        match self {
            MultiplicityResult::Exact(k)
            | MultiplicityResult::AtLeast(k)
            | MultiplicityResult::IdenticallyZeroSuspected(k) => k,
        }
    }
}

impl Serialize for MultiplicityResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Tagged {
            result: &'static str,
            value: usize,
        }
        Tagged {
            result: self.tag(),
            value: self.value(),
        }
        .serialize(s)
    }
}

/// Escalation schedule: start at `start`, double up to `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultOptions {
    pub start: usize,
    pub cap: usize,
    /// A proven upper bound; when it fits under `cap` it becomes the cap and
    /// exhausting it is reported as `AtLeast(bound + 1)`.
    pub bound: Option<BigInt>,
}

impl Default for MultOptions {
    fn default() -> Self {
        MultOptions {
            start: 64,
            cap: 4096,
            bound: None,
        }
    }
}

impl MultOptions {
    pub fn with_cap(cap: usize) -> Self {
        MultOptions {
            start: 64.min(cap.max(1)),
            cap,
            bound: None,
        }
    }

    /// Defaults, with the cap taken from `MULTBOUND_MAX_ORDER` when set.
    pub fn from_env() -> Result<Self> {
        let mut o = Self::default();
        if let Ok(v) = std::env::var(MAX_ORDER_ENV) {
            o.cap = v
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{MAX_ORDER_ENV} must be a positive integer")))?;
            o.start = o.start.min(o.cap.max(1));
        }
        Ok(o)
    }

    fn effective_cap(&self) -> (usize, bool) {
        match self.bound.as_ref().and_then(ToPrimitive::to_usize) {
            Some(b) if b <= self.cap => (b.max(1), true),
            _ => (self.cap.max(1), false),
        }
    }
}

/// Order of vanishing of `p` along the trajectory, escalating the expansion
/// order as needed.
pub fn multiplicity(
    p: &LaurentPolynomial,
    source: &dyn GermSource,
    opts: &MultOptions,
) -> Result<MultiplicityResult> {
    if p.dim() != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: p.dim(),
        });
    }
    let (cap, from_bound) = opts.effective_cap();
    let limit = source.max_order().map_or(cap, |m| m.min(cap));
    let mut order = opts.start.clamp(1, limit.max(1));
    loop {
        let germ = source.germ(order)?;
        let order_now = germ.order();
        if let Some(k) = compose(p, &germ)?.valuation() {
            return Ok(MultiplicityResult::Exact(k));
        }
        if order_now >= limit {
            let fixed = source.max_order().is_some_and(|m| m < cap);
            return Ok(if fixed || from_bound {
                MultiplicityResult::AtLeast(order_now + 1)
            } else {
                MultiplicityResult::IdenticallyZeroSuspected(order_now)
            });
        }
        order = (order * 2).min(limit);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicitySum {
    pub total: MultiplicityResult,
    pub per_point: Vec<MultiplicityResult>,
}

/// Multiplicities at several points and their sum. Any non-exact entry makes
/// the total a lower bound.
pub fn multiplicity_sum(
    p: &LaurentPolynomial,
    sources: &[&dyn GermSource],
    opts: &MultOptions,
    exec: Execution,
) -> Result<MultiplicitySum> {
    let per_point = exec
        .map_slice(sources, |s| multiplicity(p, *s, opts))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let sum: usize = per_point.iter().map(|m| m.lower_bound()).sum();
    let total = if let Some(cap) = per_point.iter().find_map(|m| match m {
        MultiplicityResult::IdenticallyZeroSuspected(c) => Some(*c),
        _ => None,
    }) {
        MultiplicityResult::IdenticallyZeroSuspected(cap)
    } else if per_point.iter().all(|m| m.exact().is_some()) {
        MultiplicityResult::Exact(sum)
    } else {
        MultiplicityResult::AtLeast(sum)
    };
    Ok(MultiplicitySum { total, per_point })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalDerivative {
    pub k: usize,
    pub derivative: LaurentPolynomial,
    pub multiplicity: usize,
}

/// Smallest `k <= cap_k` such that `ξ^k p` does not vanish identically along
/// the trajectory, for `p` that does.
pub fn first_transversal_derivative(
    xi: &PolyVectorField,
    p: &LaurentPolynomial,
    source: &dyn GermSource,
    cap_k: usize,
    opts: &MultOptions,
) -> Result<TransversalDerivative> {
    if multiplicity(p, source, opts)?.exact().is_some() {
        return Err(Error::Precondition(
            "the polynomial does not vanish identically along the germ".into(),
        ));
    }
    let mut q = p.clone();
    for k in 1..=cap_k {
        q = xi.lie_derivative(&q)?;
        if let Some(m) = multiplicity(&q, source, opts)?.exact() {
            return Ok(TransversalDerivative {
                k,
                derivative: q,
                multiplicity: m,
            });
        }
    }
    Err(Error::CapExhausted { cap: cap_k })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RolleReport {
    pub ord_f: usize,
    pub ord_xi_f: MultiplicityResult,
    /// Whether `ξ` vanishes at the base point (then no order may be lost).
    pub singular: bool,
    pub required: usize,
    pub pass: bool,
}

/// `ord(ξf|γ) >= ord(f|γ) - 1`, and `>= ord(f|γ)` at singular base points.
pub fn rolle_order_check(
    xi: &PolyVectorField,
    f: &LaurentPolynomial,
    source: &dyn GermSource,
    opts: &MultOptions,
) -> Result<RolleReport> {
    let ord_f = multiplicity(f, source, opts)?.exact().ok_or_else(|| {
        Error::Precondition("f vanishes identically along the germ to the working order".into())
    })?;
    let base = source.germ(1)?.base_point();
    let singular = xi.is_singular_at(&base)?;
    let ord_xi_f = multiplicity(&xi.lie_derivative(f)?, source, opts)?;
    let required = if singular { ord_f } else { ord_f.saturating_sub(1) };
    Ok(RolleReport {
        ord_f,
        ord_xi_f,
        singular,
        required,
        pass: ord_xi_f.lower_bound() >= required,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub ord: usize,
    /// Lowest total degree of `f` recentered at the base point.
    pub divisor_mult: usize,
    #[serde(serialize_with = "crate::num::serialize_rational")]
    pub ratio: Rational,
    pub pass: bool,
}

/// `ord(f|γ) >= mult_p V(f) >= 1` for `f` vanishing at the base point.
pub fn mult_ratio_check(
    f: &LaurentPolynomial,
    source: &dyn GermSource,
    opts: &MultOptions,
) -> Result<RatioReport> {
    if !f.is_polynomial() {
        return Err(Error::LaurentInput);
    }
    let base = source.germ(1)?.base_point();
    if !f.eval(&base)?.is_zero() {
        return Err(Error::Precondition("f does not vanish at the base point".into()));
    }
    let ord = multiplicity(f, source, opts)?.exact().ok_or_else(|| {
        Error::Precondition("f vanishes identically along the germ to the working order".into())
    })?;
    let divisor_mult = f.recenter(&base)?.lowest_degree()? as usize;
    Ok(RatioReport {
        ord,
        divisor_mult,
        ratio: Rational::new(ord.into(), divisor_mult.into()),
        pass: ord >= divisor_mult && divisor_mult >= 1,
    })
}
