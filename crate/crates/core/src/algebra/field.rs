use num_traits::Zero;
use serde::Serialize;

use super::{ExponentVector, LaurentPolynomial};
use crate::num::{self, Rational};
use crate::polytope::{Polytope, PolytopeJson};
use crate::{Error, Result};

/// `ξ = Σ ξ_i ∂/∂x_i`, optionally with a distinguished time coordinate (the
/// `t(z) ∂/∂z` component of graph-form fields).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<LaurentPolynomial>,
    time_index: Option<usize>,
}

/// `Δ_ξ` before and after the lattice translation that brings the origin in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPolytope {
    pub raw: Polytope,
    pub translation: ExponentVector,
    pub adjusted: Polytope,
}

#[derive(Serialize)]
struct FieldPolytopeJson {
    raw: PolytopeJson,
    translation: ExponentVector,
    adjusted: PolytopeJson,
}

impl FieldPolytope {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FieldPolytopeJson {
            raw: self.raw.to_json(),
            translation: self.translation.clone(),
            adjusted: self.adjusted.to_json(),
        })
        .expect("serializable")
    }
}

impl PolyVectorField {
    pub fn new(components: Vec<LaurentPolynomial>, time_index: Option<usize>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::Invalid("a vector field needs at least one component".into()));
        }
        if let Some(c) = components.iter().find(|c| c.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.dim(),
            });
        }
        if let Some(t) = time_index.filter(|&t| t >= n) {
            return Err(Error::InvalidIndex { index: t, dim: n });
        }
        Ok(PolyVectorField {
            components,
            time_index,
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[LaurentPolynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &LaurentPolynomial {
        &self.components[i]
    }

    pub fn time_index(&self) -> Option<usize> {
        self.time_index
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(LaurentPolynomial::is_polynomial)
    }

    /// `δ = max_i deg ξ_i`; `None` for Laurent fields. Zero components are
    /// skipped and the zero field has `δ = 0`.
    pub fn degree(&self) -> Option<u64> {
        if !self.is_polynomial() {
            return None;
        }
        Some(
            self.components
                .iter()
                .filter_map(|c| c.total_degree().ok())
                .max()
                .unwrap_or(0),
        )
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn is_singular_at(&self, point: &[Rational]) -> Result<bool> {
        Ok(self.eval(point)?.iter().all(Zero::is_zero))
    }

    /// `ξp = Σ ξ_i ∂p/∂x_i`.
    pub fn lie_derivative(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let mut acc = LaurentPolynomial::zero(self.dim());
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.partial(i)?;
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        Ok(acc)
    }

    /// `ξ^k p`.
    pub fn iterated_lie(&self, p: &LaurentPolynomial, k: usize) -> Result<LaurentPolynomial> {
        let mut cur = p.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.lie_derivative(&cur)?;
        }
        if cur.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: cur.dim(),
            });
        }
        Ok(cur)
    }

    /// The points `α - e_i` over all terms `x^α ∂/∂x_i`.
    pub fn field_points(&self) -> Vec<ExponentVector> {
        let n = self.dim();
        let mut pts: Vec<ExponentVector> = self
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.terms().map(move |(e, _)| e.sub(&ExponentVector::unit(n, i))))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// `Δ_ξ`. When the hull misses the origin it is translated by minus its
    /// lexicographically smallest vertex, which is a lattice point of the
    /// hull, so the result always contains the origin.
    pub fn field_polytope(&self) -> Result<FieldPolytope> {
        let pts = self.field_points();
        if pts.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let raw = Polytope::hull(&pts)?;
        let n = self.dim();
        let translation = if raw.contains_origin() {
            ExponentVector::zero(n)
        } else {
            let v = raw.lattice_vertices()?.into_iter().min().expect("nonempty");
            v.scale(-1)
        };
        let shift: Vec<Rational> = translation.iter().map(|&a| num::rat(a)).collect();
        let adjusted = raw.translate(&shift)?;
        Ok(FieldPolytope {
            raw,
            translation,
            adjusted,
        })
    }
}
