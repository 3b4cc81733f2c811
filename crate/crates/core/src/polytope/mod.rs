//! Exact lattice-polytope engine.
//!
//! Polytopes keep both representations: a sorted list of rational vertices
//! and a halfspace description `normal · x <= offset` (plus affine equations
//! `normal · x = offset` when the body is lower-dimensional). Every constructor
//! goes through the exact hull, so the vertex list never carries redundant
//! points.

mod hull;
mod lattice;
mod mixed;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ExponentVector;
use crate::num::{self, Rational};
use crate::{Error, Result};

pub use mixed::{mixed_volume, mixed_volume_with, quermassintegral, MixedVolumeQuery};

/// Configurable desk-scale guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_box: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 6,
            max_box: 10_000_000,
        }
    }
}

/// `normal · x <= offset` for facets, `normal · x = offset` for equations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        x.iter()
            .zip(&self.normal)
            .map(|(xi, a)| xi * Rational::from_integer(a.clone()))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    affine_dim: usize,
    volume: Rational,
}

fn to_rational(p: &ExponentVector) -> Vec<Rational> {
    p.iter().map(|&x| num::rat(x)).collect()
}

impl Polytope {
    /// Convex hull of lattice points.
    pub fn hull(points: &[ExponentVector]) -> Result<Polytope> {
        Self::hull_with(points, &Limits::default())
    }

    pub fn hull_with(points: &[ExponentVector], limits: &Limits) -> Result<Polytope> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        let pts = points
            .iter()
            .map(|p| {
                if p.dim() != dim {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        found: p.dim(),
                    })
                } else {
                    Ok(to_rational(p))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rational_points_with(dim, pts, limits)
    }

    /// Convex hull of rational points.
    pub fn from_rational_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Polytope> {
        Self::from_rational_points_with(dim, points, &Limits::default())
    }

    pub fn from_rational_points_with(
        dim: usize,
        points: Vec<Vec<Rational>>,
        limits: &Limits,
    ) -> Result<Polytope> {
        if dim > limits.max_dim {
            return Err(Error::DimensionGuard {
                dim,
                max: limits.max_dim,
            });
        }
        if dim == 0 {
            return Err(Error::Invalid("ambient dimension must be at least 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let unique: BTreeSet<Vec<Rational>> = points.into_iter().collect();
        if unique.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let h = hull::convex_hull(dim, unique.into_iter().collect());
        Ok(Polytope {
            dim,
            vertices: h.vertices,
            facets: h.facets,
            equations: h.equations,
            affine_dim: h.affine_dim,
            volume: h.volume,
        })
    }

    /// The single point `{0}`.
    pub fn origin(dim: usize) -> Polytope {
        Self::hull(&[ExponentVector::zero(dim)]).expect("origin")
    }

    /// `Δ_x = conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(dim: usize) -> Polytope {
        Self::coordinate_simplex(dim, &(0..dim).collect::<Vec<_>>())
    }

    /// `conv{0, e_i : i ∈ axes}`, e.g. `Δ_z` or the `x`-simplex inside a
    /// product space.
    pub fn coordinate_simplex(dim: usize, axes: &[usize]) -> Polytope {
        let mut pts = vec![ExponentVector::zero(dim)];
        pts.extend(axes.iter().map(|&i| ExponentVector::unit(dim, i)));
        Self::hull(&pts).expect("coordinate simplex")
    }

    /// `Π_n = [-1, 1]^n`.
    pub fn cube(dim: usize) -> Polytope {
        Self::integral_box(&vec![-1; dim], &vec![1; dim]).expect("cube")
    }

    pub fn integral_box(lo: &[i64], hi: &[i64]) -> Result<Polytope> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Err(Error::Invalid("box with lo > hi".into()));
        }
        let n = lo.len();
        let pts: Vec<ExponentVector> = (0..1u64 << n)
            .map(|mask| {
                ExponentVector::new(
                    (0..n)
                        .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] })
                        .collect(),
                )
            })
            .collect();
        Self::hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn volume(&self) -> Rational {
        self.volume.clone()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(num::is_integer)
    }

    /// Vertices as lattice points; fails on rational or out-of-range vertices.
    pub fn lattice_vertices(&self) -> Result<Vec<ExponentVector>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        if !num::is_integer(x) {
                            return Err(Error::NonIntegral);
                        }
                        num::to_i64(x.numer())
                            .ok_or_else(|| Error::Range("vertex coordinate exceeds i64".into()))
                    })
                    .collect::<Result<Vec<i64>>>()
                    .map(ExponentVector::new)
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|h| h.eval(x) == h.offset)
            && self.facets.iter().all(|h| h.eval(x) <= h.offset)
    }

    pub fn contains_point(&self, p: &ExponentVector) -> bool {
        self.contains(&to_rational(p))
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&vec![Rational::zero(); self.dim])
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.dim == self.dim && other.vertices.iter().all(|v| self.contains(v))
    }

    fn check_dim(&self, other: &Polytope) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        self.check_dim(other)?;
        let pts = self
            .vertices
            .iter()
            .flat_map(|a| {
                other
                    .vertices
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        Self::from_rational_points(self.dim, pts)
    }

    pub fn scale(&self, k: u64) -> Polytope {
        self.scale_by(&BigInt::from(k))
    }

    /// Dilation by a nonnegative integer.
    pub fn scale_by(&self, k: &BigInt) -> Polytope {
        assert!(!k.is_negative(), "dilation factor must be nonnegative");
        if k.is_zero() {
            let zero = vec![Rational::zero(); self.dim];
            return Self::from_rational_points(self.dim, vec![zero]).expect("origin");
        }
        let f = Rational::from_integer(k.clone());
        let kk = num::pow(k, self.affine_dim);
        Polytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * &f).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: &h.offset * &f,
                })
                .collect(),
            equations: self
                .equations
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: &h.offset * &f,
                })
                .collect(),
            affine_dim: self.affine_dim,
            volume: &self.volume * Rational::from_integer(kk),
        }
    }

    pub fn translate(&self, shift: &[Rational]) -> Result<Polytope> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: shift.len(),
            });
        }
        let mv = |h: &Halfspace| Halfspace {
            normal: h.normal.clone(),
            offset: &h.offset + h.eval(shift),
        };
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(x, s)| x + s).collect())
            .collect();
        vertices.sort();
        let mut facets: Vec<Halfspace> = self.facets.iter().map(mv).collect();
        facets.sort();
        let mut equations: Vec<Halfspace> = self.equations.iter().map(mv).collect();
        equations.sort();
        Ok(Polytope {
            dim: self.dim,
            vertices,
            facets,
            equations,
            affine_dim: self.affine_dim,
            volume: self.volume.clone(),
        })
    }

    /// Smallest `d` with `self ⊆ dΠ_n`.
    pub fn pi_degree(&self) -> BigInt {
        self.vertices
            .iter()
            .flatten()
            .map(|x| num::ceil(&num::abs(x)))
            .max()
            .unwrap_or_default()
    }

    /// Pairs of vertices spanning an edge.
    fn edges(&self) -> Vec<(usize, usize)> {
        let rows = |v: &[Rational]| -> Vec<usize> {
            (0..self.facets.len())
                .filter(|&i| self.facets[i].eval(v) == self.facets[i].offset)
                .collect()
        };
        let tight: Vec<Vec<usize>> = self.vertices.iter().map(|v| rows(v)).collect();
        let eq_rows: Vec<Vec<Rational>> = self
            .equations
            .iter()
            .map(|h| h.normal.iter().map(|a| Rational::from_integer(a.clone())).collect())
            .collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let mut m = eq_rows.clone();
                m.extend(
                    tight[i]
                        .iter()
                        .filter(|f| tight[j].contains(f))
                        .map(|&f| {
                            self.facets[f]
                                .normal
                                .iter()
                                .map(|a| Rational::from_integer(a.clone()))
                                .collect()
                        }),
                );
                if num::rank(&m) == self.dim - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Intersection with `{x : a·x <= b}`; `None` when empty.
    pub fn clip(&self, h: &Halfspace) -> Option<Polytope> {
        let vals: Vec<Rational> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if vals.iter().all(|v| v <= &h.offset) {
            return Some(self.clone());
        }
        let mut pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, v)| *v <= &h.offset)
            .map(|(p, _)| p.clone())
            .collect();
        for (i, j) in self.edges() {
            let (vi, vj) = (&vals[i], &vals[j]);
            if (vi < &h.offset && vj > &h.offset) || (vi > &h.offset && vj < &h.offset) {
                let t = (&h.offset - vi) / (vj - vi);
                let (a, b) = (&self.vertices[i], &self.vertices[j]);
                pts.push(a.iter().zip(b).map(|(x, y)| x + &t * (y - x)).collect());
            }
        }
        if pts.is_empty() {
            return None;
        }
        Some(Self::from_rational_points(self.dim, pts).expect("clipped hull"))
    }

    /// Intersection with the box `lo <= x <= hi`.
    pub fn intersect_box(&self, lo: &[Rational], hi: &[Rational]) -> Option<Polytope> {
        let mut cur = self.clone();
        for i in 0..self.dim {
            let mut e = vec![BigInt::zero(); self.dim];
            e[i] = BigInt::one();
            cur = cur.clip(&Halfspace {
                normal: e.clone(),
                offset: hi[i].clone(),
            })?;
            e[i] = -BigInt::one();
            cur = cur.clip(&Halfspace {
                normal: e,
                offset: -lo[i].clone(),
            })?;
        }
        Some(cur)
    }

    /// `Δ_d = Δ ∩ dΠ_n`; may have rational vertices (see [`Polytope::is_integral`]).
    pub fn truncate_to_box(&self, d: u64) -> Option<Polytope> {
        let hi = vec![num::rat(d as i64); self.dim];
        let lo = vec![-num::rat(d as i64); self.dim];
        self.intersect_box(&lo, &hi)
    }

    /// True iff every lattice point of the polytope has all its nonnegative
    /// componentwise predecessors inside the polytope.
    pub fn is_coideal(&self) -> Result<bool> {
        self.is_coideal_with(&Limits::default())
    }

    pub fn is_coideal_with(&self, limits: &Limits) -> Result<bool> {
        if self.vertices.iter().flatten().any(|x| x.is_negative()) {
            return Err(Error::NegativeVertex);
        }
        let pts = self.lattice_points_with(limits)?;
        Ok(pts.iter().all(|p| {
            (0..self.dim).all(|i| {
                p[i] == 0 || {
                    let mut q = p.clone();
                    q.as_mut_slice()[i] -= 1;
                    self.contains_point(&q)
                }
            })
        }))
    }

    /// Serializable vertex + facet description.
    pub fn to_json(&self) -> PolytopeJson {
        let coord = |x: &Rational| -> Coord {
            match num::is_integer(x).then(|| num::to_i64(x.numer())).flatten() {
                Some(v) => Coord::Int(v),
                None => Coord::Text(num::format_rational(x)),
            }
        };
        PolytopeJson {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(coord).collect())
                .collect(),
            affine_dim: Some(self.affine_dim),
            integral: Some(self.is_integral()),
            facets: Some(
                self.facets
                    .iter()
                    .map(|h| HalfspaceJson {
                        normal: h.normal.iter().map(|a| a.to_string()).collect(),
                        offset: num::format_rational(&h.offset),
                    })
                    .collect(),
            ),
            equations: Some(
                self.equations
                    .iter()
                    .map(|h| HalfspaceJson {
                        normal: h.normal.iter().map(|a| a.to_string()).collect(),
                        offset: num::format_rational(&h.offset),
                    })
                    .collect(),
            ),
            volume: Some(num::format_rational(&self.volume)),
        }
    }

    /// Parses `{"dim": n, "vertices": [[...], ...]}`; any facet data present
    /// is ignored and recomputed.
    pub fn from_json(j: &PolytopeJson) -> Result<Polytope> {
        let pts = j
            .vertices
            .iter()
            .map(|v| v.iter().map(Coord::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rational_points(j.dim, pts)
    }

    pub fn from_json_str(s: &str) -> Result<Polytope> {
        let j: PolytopeJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("polytope JSON: {e}")))?;
        Self::from_json(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Coord::Int(v) => Ok(num::rat(*v)),
            Coord::Text(s) => num::parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceJson {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<HalfspaceJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<HalfspaceJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<String>,
}

#[cfg(test)]
mod tests;
