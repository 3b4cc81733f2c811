use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{default_variables, ExponentVector};
use crate::num::{self, Rational};
use crate::polytope::Polytope;
use crate::{Error, Result};

/// Multivariate Laurent polynomial with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        LaurentPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zero(dim), c)
    }

    pub fn monomial(exp: ExponentVector, c: Rational) -> Self {
        let mut p = Self::zero(exp.dim());
        p.add_term(exp, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::unit(dim, i), Rational::one())
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExponentVector::zero(self.dim))
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_nonnegative)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut acc: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry(e1.add(e2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPolynomial {
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^e`.
    pub fn shift(&self, e: &ExponentVector) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Total degree of a nonzero polynomial.
    pub fn total_degree(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_polynomial() {
            return Err(Error::LaurentInput);
        }
        Ok(self.terms.keys().map(|e| e.degree() as u64).max().unwrap_or(0))
    }

    /// `(d_z, d_x)`: degree in the time variable and total degree in the
    /// others, each floored at 1.
    pub fn mixed_degrees(&self, time_index: usize) -> Result<(u64, u64)> {
        if time_index >= self.dim {
            return Err(Error::InvalidIndex {
                index: time_index,
                dim: self.dim,
            });
        }
        if !self.is_polynomial() {
            return Err(Error::LaurentInput);
        }
        let dz = self.terms.keys().map(|e| e[time_index] as u64).max().unwrap_or(0);
        let dx = self
            .terms
            .keys()
            .map(|e| (e.degree() - e[time_index]) as u64)
            .max()
            .unwrap_or(0);
        Ok((dz.max(1), dx.max(1)))
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.dim {
            return Err(Error::InvalidIndex {
                index: i,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let a = e[i];
            if a != 0 {
                let mut f = e.clone();
                f.as_mut_slice()[i] -= 1;
                out.terms.insert(f, c * num::rat(a));
            }
        }
        Ok(out)
    }

    /// Exact evaluation; negative powers of a zero coordinate are an error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in point.iter().zip(e.iter()) {
                if a < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                term *= if a < 0 {
                    num_traits::pow(x.recip(), a.unsigned_abs() as usize)
                } else {
                    num_traits::pow(x.clone(), a as usize)
                };
            }
            total += term;
        }
        Ok(total)
    }

    /// `p(x + point)` as a polynomial in the shifted coordinates.
    pub fn recenter(&self, point: &[Rational]) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::LaurentInput);
        }
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let shifted: Vec<Self> = (0..self.dim)
            .map(|i| {
                let mut v = Self::variable(self.dim, i);
                v.add_term(ExponentVector::zero(self.dim), point[i].clone());
                v
            })
            .collect();
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.dim, c.clone());
            for (i, &a) in e.iter().enumerate() {
                term = &term * &shifted[i].pow(a as u32);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Smallest total degree over the support.
    pub fn lowest_degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .map(ExponentVector::degree)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// `Δ(p) = conv(supp p)`.
    pub fn newton_polytope(&self) -> Result<Polytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Polytope::hull(&self.support())
    }

    /// Canonical expression text over the given variable names.
    pub fn to_expr(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = num::abs(c);
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(num::format_rational(&a));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], x)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    coeff: num::format_rational(c),
                    exp: e.clone().into_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((ExponentVector::new(t.exp.clone()), num::parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.dim, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i64>,
}

/// `{"dim": n, "terms": [{"coeff": "p/q", "exp": [...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr(&default_variables(self.dim)))
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scalar_mul(&-Rational::one())
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on a dimension mismatch; use the `checked_*` form to get an error.
        impl $trait<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$checked(rhs).expect("dimension mismatch")
            }
        }

        impl $trait<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
