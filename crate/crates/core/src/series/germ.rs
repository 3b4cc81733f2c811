use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dag::Evaluator;
use super::TruncatedSeries;
use crate::algebra::{LaurentPolynomial, PolyVectorField};
use crate::num::{self, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    RegularExpansion,
    RationalSystem,
    Fuchsian,
    UserSupplied,
}

/// How the germ is parametrized. `Flow` germs solve `γ' = ξ(γ)`; `Graph`
/// germs use the time coordinate itself as parameter, `γ_time = z_0 + t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GermForm {
    Flow,
    Graph { time_index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryGerm {
    components: Vec<TruncatedSeries>,
    form: GermForm,
    provenance: Provenance,
}

impl TrajectoryGerm {
    /// Components are truncated to their common minimal order.
    pub fn new(
        components: Vec<TruncatedSeries>,
        form: GermForm,
        provenance: Provenance,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("a germ needs at least one component".into()));
        }
        if let GermForm::Graph { time_index } = form {
            if time_index >= components.len() {
                return Err(Error::InvalidIndex {
                    index: time_index,
                    dim: components.len(),
                });
            }
        }
        let order = components.iter().map(TruncatedSeries::order).min().unwrap_or(0);
        Ok(TrajectoryGerm {
            components: components.into_iter().map(|c| c.truncate(order)).collect(),
            form,
            provenance,
        })
    }

    /// Germ given by exact polynomials in `t` (e.g. `(t, t^a)`), truncated at `order`.
    pub fn from_polynomials(
        polys: &[Vec<Rational>],
        order: usize,
        form: GermForm,
    ) -> Result<Self> {
        let comps = polys
            .iter()
            .map(|p| {
                TruncatedSeries::new((0..=order).map(|k| p.get(k).cloned().unwrap_or_default()).collect())
            })
            .collect();
        Self::new(comps, form, Provenance::UserSupplied)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components[0].order()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn form(&self) -> GermForm {
        self.form
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn base_point(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.coeff(0)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TrajectoryGerm {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
            form: self.form,
            provenance: self.provenance,
        }
    }

    pub fn to_json(&self) -> GermJson {
        GermJson {
            dim: self.dim(),
            order: self.order(),
            components: self
                .components
                .iter()
                .map(|c| c.coeffs().iter().map(num::format_rational).collect())
                .collect(),
            provenance: self.provenance,
            time_index: match self.form {
                GermForm::Flow => None,
                GermForm::Graph { time_index } => Some(time_index),
            },
        }
    }

    pub fn from_json(j: &GermJson) -> Result<Self> {
        if j.components.len() != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: j.components.len(),
            });
        }
        let comps = j
            .components
            .iter()
            .map(|c| {
                let mut coeffs = c
                    .iter()
                    .map(|s| num::parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                coeffs.resize(j.order + 1, Rational::zero());
                coeffs.truncate(j.order + 1);
                Ok(TruncatedSeries::new(coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        let form = match j.time_index {
            None => GermForm::Flow,
            Some(time_index) => GermForm::Graph { time_index },
        };
        Self::new(comps, form, j.provenance)
    }
}

/// `{"dim": n, "order": N, "components": [["c0", ...], ...], "provenance": "..."}`.
/// Missing trailing coefficients are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermJson {
    pub dim: usize,
    pub order: usize,
    pub components: Vec<Vec<String>>,
    #[serde(default = "user_supplied")]
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_index: Option<usize>,
}

fn user_supplied() -> Provenance {
    Provenance::UserSupplied
}

/// `p(γ(t))` through the germ's order.
pub fn compose(p: &LaurentPolynomial, gamma: &TrajectoryGerm) -> Result<TruncatedSeries> {
    if p.dim() != gamma.dim() {
        return Err(Error::DimensionMismatch {
            expected: gamma.dim(),
            found: p.dim(),
        });
    }
    let vars: Vec<Vec<Rational>> = gamma.components.iter().map(|c| c.coeffs().to_vec()).collect();
    let mut ev = Evaluator::new(p.dim(), &[p]);
    let n = gamma.order();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        ev.advance(&vars, k)?;
        out.push(ev.poly_coeff(0, k));
    }
    Ok(TruncatedSeries::new(out))
}

/// Outcome of checking that a germ solves the field's ODE.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub clean: bool,
    /// Residual coefficients are checked at orders `0..=checked_through`.
    pub checked_through: usize,
    /// First order with a nonzero residual coefficient.
    pub residual_order: Option<usize>,
    /// Order of the germ coefficient first responsible for the failure
    /// (`residual_order + 1`).
    pub germ_order: Option<usize>,
    pub component: Option<usize>,
}

/// Flow germs: `γ_i' - ξ_i(γ)`. Graph germs: `ξ_time(γ) γ_i' - ξ_i(γ)` for
/// `i ≠ time`, plus `γ_time = z_0 + t`.
pub fn residual_check(xi: &PolyVectorField, gamma: &TrajectoryGerm) -> Result<ResidualReport> {
    if xi.dim() != gamma.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            found: gamma.dim(),
        });
    }
    let n = gamma.order();
    if n == 0 {
        return Ok(ResidualReport {
            clean: true,
            checked_through: 0,
            residual_order: None,
            germ_order: None,
            component: None,
        });
    }
    let top = n - 1;
    let mut worst: Option<(usize, usize)> = None;
    let mut note = |order: Option<usize>, comp: usize| {
        if let Some(o) = order.filter(|&o| o <= top) {
            if worst.is_none_or(|(w, _)| o < w) {
                worst = Some((o, comp));
            }
        }
    };
    let time = match gamma.form {
        GermForm::Flow => None,
        GermForm::Graph { time_index } => Some(time_index),
    };
    let scale = match time {
        Some(t) => compose(xi.component(t), gamma)?,
        None => TruncatedSeries::constant(Rational::one(), n),
    };
    for i in 0..xi.dim() {
        let g = &gamma.components[i];
        if Some(i) == time {
            let mut expected = TruncatedSeries::shifted_variable(g.coeff(0), n);
            expected = expected.truncate(top);
            note((&g.truncate(top) - &expected).valuation(), i);
            continue;
        }
        let lhs = scale.truncate(top).mul_series(&g.derivative());
        let rhs = compose(xi.component(i), gamma)?.truncate(top);
        note((&lhs - &rhs).valuation(), i);
    }
    Ok(ResidualReport {
        clean: worst.is_none(),
        checked_through: top,
        residual_order: worst.map(|w| w.0),
        germ_order: worst.map(|w| w.0 + 1),
        component: worst.map(|w| w.1),
    })
}
