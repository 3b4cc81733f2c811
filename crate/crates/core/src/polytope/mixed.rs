//! Mixed volumes by polarization and simplicial quermassintegrals.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Polytope;
use crate::exec::Execution;
use crate::num::{self, Rational};
use crate::{Error, Result};

/// `n` bodies in dimension `n`.
#[derive(Clone, Debug)]
pub struct MixedVolumeQuery {
    bodies: Vec<Polytope>,
}

impl MixedVolumeQuery {
    pub fn new(bodies: Vec<Polytope>) -> Result<Self> {
        let n = bodies.first().map(Polytope::dim).ok_or(Error::EmptyPointSet)?;
        if bodies.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bodies.len(),
            });
        }
        if let Some(b) = bodies.iter().find(|b| b.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dim(),
            });
        }
        Ok(MixedVolumeQuery { bodies })
    }

    pub fn bodies(&self) -> &[Polytope] {
        &self.bodies
    }

    pub fn evaluate(&self, exec: Execution) -> Rational {
        let refs: Vec<&Polytope> = self.bodies.iter().collect();
        polarize(&refs, exec)
    }
}

/// `V(K_1, ..., K_n)`.
pub fn mixed_volume(bodies: &[&Polytope]) -> Result<Rational> {
    mixed_volume_with(bodies, Execution::default())
}

pub fn mixed_volume_with(bodies: &[&Polytope], exec: Execution) -> Result<Rational> {
    let q = MixedVolumeQuery::new(bodies.iter().map(|&b| b.clone()).collect())?;
    Ok(q.evaluate(exec))
}

/// Polarization over distinct bodies with multiplicities:
/// `n! V = Σ_c (-1)^{n-|c|} Π binom(m_i, c_i) vol(Σ c_i K_i)`.
fn polarize(bodies: &[&Polytope], exec: Execution) -> Rational {
    let n = bodies.len();
    let mut groups: Vec<(&Polytope, u64)> = Vec::new();
    for &b in bodies {
        match groups.iter_mut().find(|(g, _)| *g == b) {
            Some(g) => g.1 += 1,
            None => groups.push((b, 1)),
        }
    }
    let mut counts: Vec<Vec<u64>> = vec![Vec::new()];
    for &(_, m) in &groups {
        counts = counts
            .into_iter()
            .flat_map(|c| {
                (0..=m).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    counts.retain(|c| c.iter().any(|&k| k > 0));
    let terms = exec.map_slice(&counts, |c| {
        let mut sum: Option<Polytope> = None;
        let mut weight = BigInt::from(1);
        let mut size = 0u64;
        for (&(body, m), &k) in groups.iter().zip(c) {
            weight *= num::binomial(m, k);
            size += k;
            if k == 0 {
                continue;
            }
            let scaled = body.scale(k);
            sum = Some(match sum {
                None => scaled,
                Some(s) => s.minkowski_sum(&scaled).expect("equal dimensions"),
            });
        }
        let vol = sum.expect("nonempty selection").volume();
        let signed = if (n as u64 - size).is_multiple_of(2) {
            weight
        } else {
            -weight
        };
        vol * Rational::from_integer(signed)
    });
    let total: Rational = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    total / Rational::from_integer(num::factorial(n))
}

/// `W_j(K) = V(K, ..., K, Δ_x, ..., Δ_x)` with `j` copies of the standard simplex.
pub fn quermassintegral(body: &Polytope, j: usize) -> Result<Rational> {
    let n = body.dim();
    if j > n {
        return Err(Error::Range(format!("quermassintegral index {j} exceeds dimension {n}")));
    }
    let simplex = Polytope::standard_simplex(n);
    let mut bodies: Vec<&Polytope> = vec![body; n - j];
    bodies.extend(std::iter::repeat_n(&simplex, j));
    mixed_volume(&bodies)
}
