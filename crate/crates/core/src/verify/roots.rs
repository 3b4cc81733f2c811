//! Exact counting of isolated common zeros in `(C*)^2`.
//!
//! Each direction shears `x = u - λy`, eliminates `y` with a Sylvester
//! resultant computed by multi-modular evaluation and interpolation, strips
//! the roots lying on the coordinate axes and certifies that the remaining
//! factor is squarefree modulo a prime. The two elimination directions must
//! agree.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::modular::{self, Crt};
use super::univariate::UniPoly;
use crate::algebra::LaurentPolynomial;
use crate::num::{self, Rational};
use crate::{Error, Result};

/// Why an instance was rejected as non-generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    /// The resultant vanishes identically: a common curve component.
    VanishingResultant,
    /// A torus root is not simple, or two roots could not be separated.
    RepeatedRoot,
    /// Every tried shear kills a leading coefficient.
    LeadingCollapse,
    /// The two elimination directions disagree.
    DirectionMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum RootCount {
    Count(usize),
    Degenerate(Degeneracy),
}

impl RootCount {
    pub fn count(self) -> Option<usize> {
        match self {
            RootCount::Count(c) => Some(c),
            RootCount::Degenerate(_) => None,
        }
    }
}

const SHEARS: [i64; 4] = [1, 2, 3, 5];
const CERT_PRIMES: usize = 3;

fn prime_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| modular::primes(256))
}

/// Integer bivariate polynomial with nonnegative exponents and no monomial
/// factor.
#[derive(Clone, Debug)]
struct Bivariate {
    terms: Vec<((usize, usize), BigInt)>,
}

impl Bivariate {
    fn from_laurent(p: &LaurentPolynomial) -> Bivariate {
        let min0 = p.terms().map(|(e, _)| e[0]).min().unwrap_or(0);
        let min1 = p.terms().map(|(e, _)| e[1]).min().unwrap_or(0);
        let coeffs: Vec<Rational> = p.terms().map(|(_, c)| c.clone()).collect();
        let l = Rational::from_integer(num::lcm_of_denominators(&coeffs));
        let terms = p
            .terms()
            .map(|(e, c)| {
                (
                    ((e[0] - min0) as usize, (e[1] - min1) as usize),
                    (c * &l).to_integer(),
                )
            })
            .collect();
        Bivariate { terms }
    }

    fn swapped(&self) -> Bivariate {
        Bivariate {
            terms: self.terms.iter().map(|&((a, b), ref c)| ((b, a), c.clone())).collect(),
        }
    }

    fn total_degree(&self) -> usize {
        self.terms.iter().map(|((a, b), _)| a + b).max().unwrap_or(0)
    }

    /// Coefficients in `y` of `f(u - λy, y)`, each a polynomial in `u`.
    fn sheared(&self, lambda: i64) -> Vec<Vec<BigInt>> {
        let t = self.total_degree();
        let mut out = vec![vec![BigInt::zero(); t + 1]; t + 1];
        let ml = BigInt::from(-lambda);
        for ((a, b), c) in &self.terms {
            for j in 0..=*a {
                let coeff = c * num::binomial(*a as u64, j as u64) * num::pow(&ml, j);
                out[j + b][a - j] += coeff;
            }
        }
        out
    }

    /// `f(x, 0)` as a polynomial in `x`.
    fn on_x_axis(&self) -> UniPoly {
        let deg = self.terms.iter().map(|((a, _), _)| *a).max().unwrap_or(0);
        let mut v = vec![Rational::zero(); deg + 1];
        for ((a, b), c) in &self.terms {
            if *b == 0 {
                v[*a] += Rational::from_integer(c.clone());
            }
        }
        UniPoly::new(v)
    }
}

fn eval_mod(poly: &[u64], u: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0u64, |acc, &c| {
        ((acc as u128 * u as u128 + c as u128) % p as u128) as u64
    })
}

/// `Res_y(f, g)` for `f = Σ f_k(u) y^k`, `g = Σ g_k(u) y^k` with constant
/// leading coefficients, exactly over `Z`.
fn resultant(f: &[Vec<BigInt>], g: &[Vec<BigInt>]) -> Vec<BigInt> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let degree = m * n;
    let row_f: BigInt = f.iter().map(|c| modular::abs_sum(c)).sum();
    let row_g: BigInt = g.iter().map(|c| modular::abs_sum(c)).sum();
    let bound = BigInt::from(2) * num::pow(&row_f, n) * num::pow(&row_g, m) + BigInt::one();
    let mut crt = Crt::new(degree + 1);
    for &p in prime_table() {
        if crt.modulus() > &bound {
            break;
        }
        let fm: Vec<Vec<u64>> = f
            .iter()
            .map(|c| c.iter().map(|x| modular::reduce(x, p)).collect())
            .collect();
        let gm: Vec<Vec<u64>> = g
            .iter()
            .map(|c| c.iter().map(|x| modular::reduce(x, p)).collect())
            .collect();
        let xs: Vec<u64> = (0..=degree as u64).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&u| {
                let fv: Vec<u64> = fm.iter().map(|c| eval_mod(c, u, p)).collect();
                let gv: Vec<u64> = gm.iter().map(|c| eval_mod(c, u, p)).collect();
                let size = m + n;
                let mut mat = vec![vec![0u64; size]; size];
                for i in 0..n {
                    for k in 0..=m {
                        mat[i][i + k] = fv[m - k];
                    }
                }
                for i in 0..m {
                    for k in 0..=n {
                        mat[n + i][i + k] = gv[n - k];
                    }
                }
                modular::det(mat, p)
            })
            .collect();
        crt.add(&modular::interpolate(&xs, &ys, p), p);
    }
    assert!(crt.modulus() > &bound, "prime table exhausted");
    crt.symmetric()
}

/// True if `t` is certified squarefree modulo some prime that keeps its
/// degree.
fn certified_squarefree(t: &UniPoly) -> bool {
    let ints = t.primitive_integer();
    if ints.len() <= 2 {
        return true;
    }
    let lead = ints.last().expect("nonzero").clone();
    prime_table()
        .iter()
        .filter(|&&p| !(&lead % BigInt::from(p)).is_zero())
        .take(CERT_PRIMES)
        .any(|&p| {
            let red: Vec<u64> = ints.iter().map(|c| modular::reduce(c, p)).collect();
            modular::poly_gcd(&red, &modular::derivative(&red, p), p).len() == 1
        })
}

fn leading_nonzero(sheared: &[Vec<BigInt>]) -> bool {
    sheared.last().is_some_and(|c| !c[0].is_zero())
}

/// Number of torus roots eliminating `y` after the shear `u = x + λy`.
fn direction(f: &Bivariate, g: &Bivariate) -> RootCount {
    let axis_y0 = f.on_x_axis().gcd(&g.on_x_axis());
    let axis_x0 = f.swapped().on_x_axis().gcd(&g.swapped().on_x_axis());
    let mut collapse = true;
    for &lambda in &SHEARS {
        let fs = f.sheared(lambda);
        let gs = g.sheared(lambda);
        if !leading_nonzero(&fs) || !leading_nonzero(&gs) {
            continue;
        }
        collapse = false;
        let r = UniPoly::from_bigints(&resultant(&fs, &gs));
        if r.is_zero() {
            return RootCount::Degenerate(Degeneracy::VanishingResultant);
        }
        // Roots with y = 0 sit at u = x, roots with x = 0 at u = λy.
        let axis = axis_y0.mul(&axis_x0.compose_scale(&Rational::new(
            BigInt::one(),
            BigInt::from(lambda),
        )));
        let mut t = r;
        if axis.degree().unwrap_or(0) > 0 {
            loop {
                let common = t.gcd(&axis);
                if common.degree().unwrap_or(0) == 0 {
                    break;
                }
                t = t.divrem(&common).0;
            }
        }
        if certified_squarefree(&t) {
            return RootCount::Count(t.degree().unwrap_or(0));
        }
    }
    RootCount::Degenerate(if collapse {
        Degeneracy::LeadingCollapse
    } else {
        Degeneracy::RepeatedRoot
    })
}

/// Number of isolated common zeros of `p1, p2` in `(C*)^2`, or the reason
/// the instance is not generic enough to count them exactly.
pub fn count_torus_roots_2d(p1: &LaurentPolynomial, p2: &LaurentPolynomial) -> Result<RootCount> {
    for p in [p1, p2] {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let f = Bivariate::from_laurent(p1);
    let g = Bivariate::from_laurent(p2);
    let first = direction(&f, &g);
    let RootCount::Count(a) = first else {
        return Ok(first);
    };
    let second = direction(&f.swapped(), &g.swapped());
    Ok(match second {
        RootCount::Count(b) if b == a => first,
        RootCount::Count(_) => RootCount::Degenerate(Degeneracy::DirectionMismatch),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, 2).unwrap()
    }

    #[test]
    fn generic_lines() {
        let c = count_torus_roots_2d(&poly("3*x1 - 5*x2 + 7"), &poly("2*x1 + 11*x2 - 13")).unwrap();
        assert_eq!(c, RootCount::Count(1));
    }

    #[test]
    fn laurent_square_and_simplex() {
        let p1 = poly("3*x1*x2 + 5*x1*x2^-1 - 7*x1^-1*x2 + 2*x1^-1*x2^-1 + 11");
        let p2 = poly("13*x1 - 17*x2 + 19");
        assert_eq!(count_torus_roots_2d(&p1, &p2).unwrap(), RootCount::Count(4));
        let diamond = poly("3*x1 + 5*x1^-1 - 7*x2 + 2*x2^-1 + 11");
        assert_eq!(count_torus_roots_2d(&diamond, &p2).unwrap(), RootCount::Count(3));
    }

    #[test]
    fn identical_is_degenerate() {
        let p = poly("x1 + x2 + 1");
        assert_eq!(
            count_torus_roots_2d(&p, &p).unwrap(),
            RootCount::Degenerate(Degeneracy::VanishingResultant)
        );
    }

    #[test]
    fn sublattice_support() {
        let p1 = poly("3 + 5*x1^2 - 7*x2^2");
        let p2 = poly("-2 + 11*x1^2 + 13*x2^2");
        assert_eq!(count_torus_roots_2d(&p1, &p2).unwrap(), RootCount::Count(4));
    }

    #[test]
    fn axis_roots_excluded() {
        // Common roots (0,0) and one torus root.
        let p1 = poly("2*x1 + 3*x2 + 5*x1*x2");
        let p2 = poly("7*x1 - 11*x2 + 13*x1*x2");
        assert_eq!(count_torus_roots_2d(&p1, &p2).unwrap(), RootCount::Count(1));
    }

    #[test]
    fn decomposable_system() {
        // x fixed by p1, three y values from p2.
        let p1 = poly("2*x1 - 3");
        let p2 = poly("x2^3 + 5*x1*x2 - 7");
        assert_eq!(count_torus_roots_2d(&p1, &p2).unwrap(), RootCount::Count(3));
    }

    #[test]
    fn no_roots_for_monomial() {
        let p1 = poly("4*x1^2*x2");
        let p2 = poly("x1 + x2 + 1");
        assert_eq!(count_torus_roots_2d(&p1, &p2).unwrap(), RootCount::Count(0));
    }

    #[test]
    fn double_root_flagged() {
        // The line is tangent to the conic at (1, 1).
        let p1 = poly("x2 - x1^2");
        let p2 = poly("x2 - 2*x1 + 1");
        assert_eq!(
            count_torus_roots_2d(&p1, &p2).unwrap(),
            RootCount::Degenerate(Degeneracy::RepeatedRoot)
        );
    }
}
