//! Exact incremental convex hull (beneath-beyond) over scaled integer points.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Halfspace;
use crate::num::{self, Rational};

pub(crate) struct HullData {
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
    pub affine_dim: usize,
    pub volume: Rational,
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Affine basis of `pts`: chosen point indices (first is 0), echelon rows and
/// their pivot columns.
fn affine_basis(pts: &[Vec<BigInt>]) -> (Vec<usize>, Vec<Vec<Rational>>, Vec<usize>) {
    let n = pts[0].len();
    let mut chosen = vec![0];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        if rows.len() == n {
            break;
        }
        let mut d: Vec<Rational> = p
            .iter()
            .zip(&pts[0])
            .map(|(a, b)| Rational::from_integer(a - b))
            .collect();
        for (row, &pc) in rows.iter().zip(&pivots) {
            if d[pc].is_zero() {
                continue;
            }
            let f = &d[pc] / &row[pc];
            for j in 0..n {
                let v = &row[j] * &f;
                d[j] -= v;
            }
        }
        if let Some(pc) = d.iter().position(|x| !x.is_zero()) {
            rows.push(d);
            pivots.push(pc);
            chosen.push(i);
        }
    }
    (chosen, rows, pivots)
}

/// Primitive integer normal of the hyperplane through `k` points in `Z^k`.
fn plane_normal(pts: &[Vec<BigInt>], verts: &[usize]) -> Vec<BigInt> {
    let k = pts[verts[0]].len();
    let base = &pts[verts[0]];
    let m: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|&v| pts[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal: Vec<BigInt> = (0..k)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = num::det_bigint(minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    num::primitive(&mut normal);
    normal
}

fn oriented_facet(
    pts: &[Vec<BigInt>],
    verts: Vec<usize>,
    interior: &[BigInt],
    weight: &BigInt,
) -> Facet {
    let mut normal = plane_normal(pts, &verts);
    let mut offset = dot(&normal, &pts[verts[0]]);
    if dot(&normal, interior) > &offset * weight {
        normal.iter_mut().for_each(|x| *x = -x.clone());
        offset = -offset;
    }
    Facet {
        verts,
        normal,
        offset,
    }
}

/// Full-dimensional hull in `Z^k`, `k >= 2`. Returns the simplicial boundary.
fn full_hull(pts: &[Vec<BigInt>], simplex: &[usize]) -> Vec<Facet> {
    let k = pts[0].len();
    let weight = BigInt::from(k + 1);
    let interior: Vec<BigInt> = (0..k)
        .map(|j| simplex.iter().map(|&i| &pts[i][j]).sum())
        .collect();
    let mut facets: Vec<Facet> = (0..=k)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            oriented_facet(pts, verts, &interior, &weight)
        })
        .collect();
    let in_simplex: HashSet<usize> = simplex.iter().copied().collect();
    for q in 0..pts.len() {
        if in_simplex.contains(&q) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| dot(&f.normal, &pts[q]) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let mut ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut ridge in horizon {
            ridge.push(q);
            kept.push(oriented_facet(pts, ridge, &interior, &weight));
        }
        facets = kept;
    }
    facets
}

fn lift(normal_k: &[BigInt], cols: &[usize], n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    for (x, &c) in normal_k.iter().zip(cols) {
        v[c] = x.clone();
    }
    v
}

/// Convex hull of a nonempty, deduplicated point set.
pub(crate) fn convex_hull(dim: usize, points: Vec<Vec<Rational>>) -> HullData {
    let scale = num::lcm_of_denominators(points.iter().flatten());
    let ipts: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    let (chosen, rows, pivots) = affine_basis(&ipts);
    let k = rows.len();

    let mut equations: Vec<Halfspace> = num::kernel(&rows, dim)
        .into_iter()
        .map(|v| {
            let l = num::lcm_of_denominators(v.iter());
            let mut normal: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
            num::primitive(&mut normal);
            if normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                normal.iter_mut().for_each(|x| *x = -x.clone());
            }
            let offset = points[0]
                .iter()
                .zip(&normal)
                .map(|(x, a)| x * Rational::from_integer(a.clone()))
                .sum();
            Halfspace { normal, offset }
        })
        .collect();
    equations.sort();

    let mut cols = pivots.clone();
    cols.sort_unstable();
    let proj: Vec<Vec<BigInt>> = ipts
        .iter()
        .map(|p| cols.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let unscale = |b: BigInt| Rational::new(b, scale.clone());

    match k {
        0 => HullData {
            vertices: vec![points[0].clone()],
            facets: Vec::new(),
            equations,
            affine_dim: 0,
            volume: Rational::zero(),
        },
        1 => {
            let (lo, hi) = proj.iter().enumerate().fold((0, 0), |(lo, hi), (i, p)| {
                (
                    if p[0] < proj[lo][0] { i } else { lo },
                    if p[0] > proj[hi][0] { i } else { hi },
                )
            });
            let facets = vec![
                Halfspace {
                    normal: lift(&[-BigInt::one()], &cols, dim),
                    offset: unscale(-proj[lo][0].clone()),
                },
                Halfspace {
                    normal: lift(&[BigInt::one()], &cols, dim),
                    offset: unscale(proj[hi][0].clone()),
                },
            ];
            let mut vertices = vec![points[lo].clone(), points[hi].clone()];
            vertices.sort();
            let volume = if dim == 1 {
                unscale(&proj[hi][0] - &proj[lo][0])
            } else {
                Rational::zero()
            };
            HullData {
                vertices,
                facets,
                equations,
                affine_dim: 1,
                volume,
            }
        }
        _ => {
            let simplex: Vec<usize> = chosen.clone();
            let boundary = full_hull(&proj, &simplex);
            let merged: BTreeSet<(Vec<BigInt>, BigInt)> = boundary
                .iter()
                .map(|f| (f.normal.clone(), f.offset.clone()))
                .collect();
            let candidates: BTreeSet<usize> =
                boundary.iter().flat_map(|f| f.verts.iter().copied()).collect();
            let mut vertices: Vec<Vec<Rational>> = candidates
                .into_iter()
                .filter(|&v| {
                    let tight: Vec<Vec<Rational>> = merged
                        .iter()
                        .filter(|(a, b)| &dot(a, &proj[v]) == b)
                        .map(|(a, _)| a.iter().map(|x| Rational::from_integer(x.clone())).collect())
                        .collect();
                    num::rank(&tight) == k
                })
                .map(|v| points[v].clone())
                .collect();
            vertices.sort();
            let volume = if k == dim {
                let apex = &proj[simplex[0]];
                let total: BigInt = boundary
                    .iter()
                    .map(|f| {
                        let m: Vec<Vec<BigInt>> = f
                            .verts
                            .iter()
                            .map(|&v| proj[v].iter().zip(apex).map(|(a, b)| a - b).collect())
                            .collect();
                        num::det_bigint(m).abs()
                    })
                    .sum();
                Rational::new(total, num::factorial(dim) * num::pow(&scale, dim))
            } else {
                Rational::zero()
            };
            let facets = merged
                .into_iter()
                .map(|(a, b)| Halfspace {
                    normal: lift(&a, &cols, dim),
                    offset: unscale(b),
                })
                .collect();
            HullData {
                vertices,
                facets,
                equations,
                affine_dim: k,
                volume,
            }
        }
    }
}
