//! Truncated power series and trajectory germs.

mod dag;
mod expand;
mod germ;

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::num::Rational;
use crate::{Error, Result};

pub use expand::{
    expand_fuchsian, expand_rational, expand_regular, FixedGerm, FuchsianSource, FuchsianSystem,
    GermSource, Pins, RationalSource, RationalSystem, RegularSource,
};
pub use germ::{compose, residual_check, GermForm, GermJson, Provenance, ResidualReport, TrajectoryGerm};

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

pub(crate) fn convolve(a: &[Rational], b: &[Rational], k: usize) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..=k {
        let (x, y) = (&a[j], &b[k - j]);
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

impl TruncatedSeries {
    /// Coefficients `c_0..c_N`; an empty list is treated as `0 + O(t)`.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c + t`.
    pub fn shifted_variable(c: Rational, order: usize) -> Self {
        let mut s = Self::constant(c, order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the first nonzero coefficient; `None` when zero through `N`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// `d/dt`, of order `N - 1` (order 0 stays order 0 with a zero value).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * Rational::from_integer(k.into()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect(),
        }
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| convolve(&self.coeffs, &other.coeffs, k)).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for k in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(Rational::one(), self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_series(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_series(&base);
            }
        }
        result
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scalar_mul(&-Rational::one())
    }
}

#[cfg(test)]
mod tests;
