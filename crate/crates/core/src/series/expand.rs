//! Order-by-order expansion of trajectory germs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::dag::Evaluator;
use super::germ::{GermForm, Provenance, TrajectoryGerm};
use super::TruncatedSeries;
use crate::algebra::{LaurentPolynomial, PolyVectorField};
use crate::num::{self, LinearSolution, Rational};
use crate::{Error, Result};

/// Prescribed coefficients at resonant orders: `pins[k][j]` fixes coefficient
/// `k` of the `j`-th unknown (time coordinate excluded).
pub type Pins = BTreeMap<usize, Vec<Option<Rational>>>;

/// Produces germs of a fixed trajectory at any requested order.
pub trait GermSource: Sync {
    fn dim(&self) -> usize;

    fn germ(&self, order: usize) -> Result<TrajectoryGerm>;

    /// Largest order available, for sources that cannot be extended.
    fn max_order(&self) -> Option<usize> {
        None
    }
}

fn check_point(dim: usize, point: &[Rational]) -> Result<()> {
    if point.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: point.len(),
        });
    }
    Ok(())
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Range("expansion order must be at least 1".into()));
    }
    Ok(())
}

/// Solves `Q_i(y) y_i' = P_i(y)` for every unknown `i`, with the time
/// coordinate (if any) fixed to `z_0 + t`.
fn linear_recursion(
    dim: usize,
    time: Option<usize>,
    lhs: &[Option<&LaurentPolynomial>],
    rhs: &[&LaurentPolynomial],
    base: &[Rational],
    order: usize,
) -> Result<Vec<TruncatedSeries>> {
    let unknowns: Vec<usize> = (0..dim).filter(|&i| Some(i) != time).collect();
    let mut polys: Vec<&LaurentPolynomial> = rhs.to_vec();
    let mut lhs_index: Vec<Option<usize>> = Vec::with_capacity(unknowns.len());
    for q in lhs {
        lhs_index.push(q.map(|q| {
            polys.push(q);
            polys.len() - 1
        }));
    }
    let mut ev = Evaluator::new(dim, &polys);
    let mut vars: Vec<Vec<Rational>> = base.iter().map(|c| vec![c.clone()]).collect();
    let mut lhs_series: Vec<Vec<Rational>> = vec![Vec::new(); unknowns.len()];
    for k in 0..order {
        ev.advance(&vars, k)?;
        let mut next = Vec::with_capacity(unknowns.len());
        for (u, &i) in unknowns.iter().enumerate() {
            let a = &mut lhs_series[u];
            a.push(match lhs_index[u] {
                Some(q) => ev.poly_coeff(q, k),
                None if k == 0 => Rational::one(),
                None => Rational::zero(),
            });
            if a[0].is_zero() {
                return Err(Error::VanishingDenominator { index: i });
            }
            let x = &vars[i];
            let mut acc = ev.poly_coeff(u, k);
            for j in 1..=k {
                if !a[j].is_zero() {
                    acc -= &a[j] * num::rat((k + 1 - j) as i64) * &x[k + 1 - j];
                }
            }
            next.push(acc / (&a[0] * num::rat(k as i64 + 1)));
        }
        for (&i, c) in unknowns.iter().zip(next) {
            vars[i].push(c);
        }
        if let Some(t) = time {
            vars[t].push(if k == 0 { Rational::one() } else { Rational::zero() });
        }
    }
    Ok(vars.into_iter().map(TruncatedSeries::new).collect())
}

/// The flow of `x' = ξ(x)` through a regular point.
pub fn expand_regular(
    xi: &PolyVectorField,
    point: &[Rational],
    order: usize,
) -> Result<TrajectoryGerm> {
    check_point(xi.dim(), point)?;
    check_order(order)?;
    if xi.is_singular_at(point)? {
        return Err(Error::SingularPoint);
    }
    let rhs: Vec<&LaurentPolynomial> = xi.components().iter().collect();
    let lhs = vec![None; xi.dim()];
    let comps = linear_recursion(xi.dim(), None, &lhs, &rhs, point, order)?;
    TrajectoryGerm::new(comps, GermForm::Flow, Provenance::RegularExpansion)
}

/// `∂x_i/∂z = P_i / Q_i` in the variables `(z, x)`, with `z` at `time_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSystem {
    dim: usize,
    time_index: usize,
    numerators: Vec<LaurentPolynomial>,
    denominators: Vec<LaurentPolynomial>,
}

impl RationalSystem {
    /// One numerator and denominator per non-time coordinate, in order.
    pub fn new(
        time_index: usize,
        numerators: Vec<LaurentPolynomial>,
        denominators: Vec<LaurentPolynomial>,
    ) -> Result<Self> {
        let dim = numerators.len() + 1;
        if denominators.len() != numerators.len() {
            return Err(Error::DimensionMismatch {
                expected: numerators.len(),
                found: denominators.len(),
            });
        }
        if time_index >= dim {
            return Err(Error::InvalidIndex {
                index: time_index,
                dim,
            });
        }
        if let Some(p) = numerators.iter().chain(&denominators).find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(RationalSystem {
            dim,
            time_index,
            numerators,
            denominators,
        })
    }

    /// `∂x_i/∂z = ξ_i / ξ_time` for a graph-form field.
    pub fn from_field(xi: &PolyVectorField) -> Result<Self> {
        let t = xi
            .time_index()
            .ok_or_else(|| Error::Precondition("the field has no time coordinate".into()))?;
        let nums = (0..xi.dim())
            .filter(|&i| i != t)
            .map(|i| xi.component(i).clone())
            .collect::<Vec<_>>();
        let dens = vec![xi.component(t).clone(); nums.len()];
        Self::new(t, nums, dens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn time_index(&self) -> usize {
        self.time_index
    }
}

/// The graph germ `(z_0 + t, f(z_0 + t))` of a rational system.
pub fn expand_rational(
    system: &RationalSystem,
    z0: &Rational,
    x0: &[Rational],
    order: usize,
) -> Result<TrajectoryGerm> {
    check_point(system.dim - 1, x0)?;
    check_order(order)?;
    let mut base = x0.to_vec();
    base.insert(system.time_index, z0.clone());
    let rhs: Vec<&LaurentPolynomial> = system.numerators.iter().collect();
    let lhs: Vec<Option<&LaurentPolynomial>> = system.denominators.iter().map(Some).collect();
    let comps = linear_recursion(system.dim, Some(system.time_index), &lhs, &rhs, &base, order)?;
    TrajectoryGerm::new(
        comps,
        GermForm::Graph {
            time_index: system.time_index,
        },
        Provenance::RationalSystem,
    )
}

/// `z x_i' = F_i(z, x)` in the variables `(z, x)`, with `z` at `time_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianSystem {
    dim: usize,
    time_index: usize,
    rhs: Vec<LaurentPolynomial>,
}

impl FuchsianSystem {
    /// One right-hand side per non-time coordinate, in order.
    pub fn new(time_index: usize, rhs: Vec<LaurentPolynomial>) -> Result<Self> {
        let dim = rhs.len() + 1;
        if time_index >= dim {
            return Err(Error::InvalidIndex {
                index: time_index,
                dim,
            });
        }
        if let Some(p) = rhs.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(FuchsianSystem {
            dim,
            time_index,
            rhs,
        })
    }

    /// Reads `z ∂/∂z + Σ F_i ∂/∂x_i`; the time component must be exactly `z`.
    pub fn from_field(xi: &PolyVectorField) -> Result<Self> {
        let t = xi
            .time_index()
            .ok_or_else(|| Error::Precondition("the field has no time coordinate".into()))?;
        if xi.component(t) != &LaurentPolynomial::variable(xi.dim(), t) {
            return Err(Error::Precondition(
                "a Fuchsian field must have time component exactly z".into(),
            ));
        }
        let rhs = (0..xi.dim())
            .filter(|&i| i != t)
            .map(|i| xi.component(i).clone())
            .collect();
        Self::new(t, rhs)
    }

    /// The vector field `z ∂/∂z + Σ F_i ∂/∂x_i`.
    pub fn to_field(&self) -> PolyVectorField {
        let mut comps = self.rhs.clone();
        comps.insert(
            self.time_index,
            LaurentPolynomial::variable(self.dim, self.time_index),
        );
        PolyVectorField::new(comps, Some(self.time_index)).expect("consistent dimensions")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn time_index(&self) -> usize {
        self.time_index
    }

    /// `J = ∂F/∂x` at `(0, x0)`.
    pub fn jacobian(&self, x0: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let base = self.base(x0)?;
        let xs: Vec<usize> = (0..self.dim).filter(|&i| i != self.time_index).collect();
        self.rhs
            .iter()
            .map(|f| xs.iter().map(|&j| f.partial(j)?.eval(&base)).collect())
            .collect()
    }

    fn base(&self, x0: &[Rational]) -> Result<Vec<Rational>> {
        check_point(self.dim - 1, x0)?;
        let mut base = x0.to_vec();
        base.insert(self.time_index, Rational::zero());
        Ok(base)
    }
}

/// The holomorphic solution through `(0, x0)`, as a graph germ with `z = t`.
pub fn expand_fuchsian(
    system: &FuchsianSystem,
    x0: &[Rational],
    order: usize,
    pins: &Pins,
) -> Result<TrajectoryGerm> {
    check_order(order)?;
    let base = system.base(x0)?;
    let t = system.time_index;
    let xs: Vec<usize> = (0..system.dim).filter(|&i| i != t).collect();
    for (f, &i) in system.rhs.iter().zip(&xs) {
        if !f.eval(&base)?.is_zero() {
            return Err(Error::InconsistentBasePoint { index: i });
        }
    }
    let jac = system.jacobian(x0)?;
    let m = xs.len();
    let polys: Vec<&LaurentPolynomial> = system.rhs.iter().collect();
    let mut ev = Evaluator::new(system.dim, &polys);
    let mut vars: Vec<Vec<Rational>> = base.iter().map(|c| vec![c.clone()]).collect();
    ev.advance(&vars, 0)?;
    for k in 1..=order {
        vars[t].push(if k == 1 { Rational::one() } else { Rational::zero() });
        for &i in &xs {
            vars[i].push(Rational::zero());
        }
        ev.advance(&vars, k)?;
        let r: Vec<Rational> = (0..m).map(|a| ev.poly_coeff(a, k)).collect();
        let mut rows: Vec<Vec<Rational>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let diag = if a == b { num::rat(k as i64) } else { Rational::zero() };
                        diag - &jac[a][b]
                    })
                    .collect()
            })
            .collect();
        let mut rhs = r;
        if let Some(pin) = pins.get(&k) {
            if pin.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: pin.len(),
                });
            }
            for (j, v) in pin.iter().enumerate() {
                if let Some(v) = v {
                    let mut row = vec![Rational::zero(); m];
                    row[j] = Rational::one();
                    rows.push(row);
                    rhs.push(v.clone());
                }
            }
        }
        let c = match num::solve(&rows, &rhs, m) {
            LinearSolution::Unique(c) => c,
            LinearSolution::Underdetermined { rank } => {
                return Err(Error::Resonance {
                    order: k,
                    detail: format!(
                        "kI - J is singular (rank {rank} of {m}); pin the free coefficients"
                    ),
                })
            }
            LinearSolution::Inconsistent => {
                return Err(Error::Resonance {
                    order: k,
                    detail: "the linear system for this order has no solution".into(),
                })
            }
        };
        for (&i, v) in xs.iter().zip(c) {
            vars[i][k] = v;
        }
        ev.advance(&vars, k)?;
    }
    let comps = vars.into_iter().map(TruncatedSeries::new).collect();
    TrajectoryGerm::new(comps, GermForm::Graph { time_index: t }, Provenance::Fuchsian)
}

#[derive(Clone, Debug)]
pub struct RegularSource {
    pub field: PolyVectorField,
    pub point: Vec<Rational>,
}

impl GermSource for RegularSource {
    fn dim(&self) -> usize {
        self.field.dim()
    }

    fn germ(&self, order: usize) -> Result<TrajectoryGerm> {
        expand_regular(&self.field, &self.point, order)
    }
}

#[derive(Clone, Debug)]
pub struct RationalSource {
    pub system: RationalSystem,
    pub z0: Rational,
    pub x0: Vec<Rational>,
}

impl GermSource for RationalSource {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn germ(&self, order: usize) -> Result<TrajectoryGerm> {
        expand_rational(&self.system, &self.z0, &self.x0, order)
    }
}

#[derive(Clone, Debug)]
pub struct FuchsianSource {
    pub system: FuchsianSystem,
    pub x0: Vec<Rational>,
    pub pins: Pins,
}

impl GermSource for FuchsianSource {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn germ(&self, order: usize) -> Result<TrajectoryGerm> {
        expand_fuchsian(&self.system, &self.x0, order, &self.pins)
    }
}

/// A germ known only to a fixed order.
#[derive(Clone, Debug)]
pub struct FixedGerm(pub TrajectoryGerm);

impl GermSource for FixedGerm {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn germ(&self, order: usize) -> Result<TrajectoryGerm> {
        Ok(self.0.truncate(order))
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.0.order())
    }
}
