//! Hilbert-function ranks of polynomially parametrized varieties.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::univariate::UniPoly;
use crate::algebra::ExponentVector;
use crate::num::{self, Rational};
use crate::{Error, Result};

/// Laurent polynomial in `t`: `t^shift · poly`.
#[derive(Clone, Debug)]
struct LaurentUni {
    shift: i64,
    poly: UniPoly,
}

impl LaurentUni {
    fn one() -> Self {
        LaurentUni {
            shift: 0,
            poly: UniPoly::one(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        LaurentUni {
            shift: self.shift + other.shift,
            poly: self.poly.mul(&other.poly),
        }
    }

    fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.shift + k as i64, c))
    }
}

fn power(g: &UniPoly, e: i64, index: usize) -> Result<LaurentUni> {
    if e >= 0 {
        return Ok(LaurentUni {
            shift: 0,
            poly: g.pow(e as u32),
        });
    }
    let (k, c) = g.as_monomial().ok_or_else(|| {
        Error::Invalid(format!(
            "component {index} is not a monomial but appears with a negative exponent"
        ))
    })?;
    let m = (-e) as u32;
    let inv = num::pow(c.denom(), m as usize);
    let coeff = Rational::new(inv, num::pow(c.numer(), m as usize));
    Ok(LaurentUni {
        shift: -(k as i64) * (-e),
        poly: UniPoly::constant(coeff),
    })
}

/// `hf(V, A) = dim span{ g^a : a ∈ A }` for the curve `V = g(C)`, computed
/// by exact rank.
pub fn hf_parametrized(map: &[UniPoly], support: &[ExponentVector]) -> Result<usize> {
    let n = map.len();
    let mut rows = Vec::with_capacity(support.len());
    for a in support {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        let mut acc = LaurentUni::one();
        for (i, (&e, g)) in a.iter().zip(map).enumerate() {
            if e != 0 {
                acc = acc.mul(&power(g, e, i)?);
            }
        }
        rows.push(acc);
    }
    let mut columns: BTreeMap<i64, usize> = BTreeMap::new();
    for r in &rows {
        for (k, _) in r.terms() {
            let next = columns.len();
            columns.entry(k).or_insert(next);
        }
    }
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); columns.len()];
            for (k, c) in r.terms() {
                v[columns[&k]] = c.clone();
            }
            v
        })
        .collect();
    if columns.is_empty() {
        return Ok(0);
    }
    Ok(num::rank(&matrix))
}

/// `max ⟨w, a⟩ - min ⟨w, a⟩ + 1` over `A`, the number of distinct monomials a
/// monomial curve with exponent vector `w` can produce from `A`.
pub fn monomial_curve_width(weights: &[i64], support: &[ExponentVector]) -> i64 {
    let values: Vec<i64> = support
        .iter()
        .map(|a| a.iter().zip(weights).map(|(x, w)| x * w).sum())
        .collect();
    match (values.iter().min(), values.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo + 1,
        _ => 0,
    }
}

/// Monomials of `k Δ_n`.
pub fn simplex_monomials(n: usize, k: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if i == cur.len() {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k, &mut cur, &mut out);
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::hf_upper_pure;
    use num_bigint::BigInt;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn parabola_rank() {
        let g = [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[0, 0, 1])];
        let a = [ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 1])];
        assert_eq!(hf_parametrized(&g, &a).unwrap(), 3);
    }

    #[test]
    fn diagonal_rank() {
        let g = [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[0, 1])];
        assert_eq!(hf_parametrized(&g, &[ev(&[1, 0]), ev(&[0, 1])]).unwrap(), 1);
    }

    #[test]
    fn monomial_curve_against_upper_bound() {
        let g = [UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[0, 0, 0, 1])];
        let a = simplex_monomials(2, 2);
        let rank = hf_parametrized(&g, &a).unwrap();
        assert!(BigInt::from(rank) <= hf_upper_pure(&BigInt::from(3), 2, 1));
        assert_eq!(rank, 6);
        assert!(rank as i64 <= monomial_curve_width(&[2, 3], &a));
    }

    #[test]
    fn negative_exponents() {
        let g = [UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[1, 1])];
        let a = [ev(&[-1, 0]), ev(&[0, 0]), ev(&[1, 0])];
        assert_eq!(hf_parametrized(&g, &a).unwrap(), 3);
        assert!(hf_parametrized(&g, &[ev(&[0, -1])]).is_err());
    }
}
