//! Lattice-point enumeration by bounding-box scan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Limits, Polytope};
use crate::algebra::ExponentVector;
use crate::exec::Execution;
use crate::num::{self, Rational};
use crate::{Error, Result};

/// Integer constraint system `a·x <= b` (equations appear as two rows).
fn integer_rows(p: &Polytope) -> Vec<(Vec<BigInt>, BigInt)> {
    let mut rows = Vec::new();
    for h in p.facets() {
        // a·x <= p/q with a, x integral  <=>  a·x <= floor(p/q)
        rows.push((h.normal.clone(), num::floor(&h.offset)));
    }
    for h in p.equations() {
        if !num::is_integer(&h.offset) {
            // no lattice point can satisfy a·x = non-integer
            rows.push((vec![BigInt::zero(); p.dim()], -BigInt::one()));
            continue;
        }
        let b = h.offset.numer().clone();
        rows.push((h.normal.clone(), b.clone()));
        rows.push((h.normal.iter().map(|x| -x).collect(), -b));
    }
    rows
}

fn bounding_box(p: &Polytope) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = p.dim();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let col = p.vertices().iter().map(|v| &v[i]);
        let min: &Rational = col.clone().min().expect("nonempty");
        let max: &Rational = col.max().expect("nonempty");
        lo.push(num::ceil(min));
        hi.push(num::floor(max));
    }
    (lo, hi)
}

trait Scalar: Integer + Signed + Clone + Send + Sync {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

struct Scan<T> {
    rows: Vec<(Vec<T>, T)>,
    lo: Vec<T>,
    hi: Vec<T>,
}

fn ceil_div<T: Scalar>(a: &T, b: &T) -> T {
    -((T::zero() - a.clone()).div_floor(b))
}

impl<T: Scalar> Scan<T> {
    /// Interval of feasible values for the last coordinate given a prefix.
    fn last_interval(&self, prefix: &[T]) -> Option<(T, T)> {
        let n = self.lo.len();
        let mut lo = self.lo[n - 1].clone();
        let mut hi = self.hi[n - 1].clone();
        for (a, b) in &self.rows {
            let mut rest = b.clone();
            for (ai, xi) in a.iter().zip(prefix) {
                rest = rest - ai.clone() * xi.clone();
            }
            let c = &a[n - 1];
            if c.is_zero() {
                if rest.is_negative() {
                    return None;
                }
            } else if c.is_positive() {
                let f = rest.div_floor(c);
                if f < hi {
                    hi = f;
                }
            } else {
                let f = ceil_div(&rest, c);
                if f > lo {
                    lo = f;
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Visits every feasible prefix for coordinates `1..n-1` after fixing `x0`.
    fn walk(&self, x0: T, visit: &mut dyn FnMut(&[T], T, T)) {
        let n = self.lo.len();
        if n == 1 {
            if let Some((lo, hi)) = self.last_interval(&[]) {
                visit(&[], lo, hi);
            }
            return;
        }
        let mut prefix: Vec<T> = vec![x0];
        prefix.extend(self.lo[1..n - 1].iter().cloned());
        loop {
            if let Some((lo, hi)) = self.last_interval(&prefix) {
                visit(&prefix, lo, hi);
            }
            // odometer over coordinates 1..n-1
            let mut i = n - 2;
            loop {
                if i == 0 {
                    return;
                }
                if prefix[i] < self.hi[i] {
                    prefix[i] = prefix[i].clone() + T::one();
                    break;
                }
                prefix[i] = self.lo[i].clone();
                i -= 1;
            }
        }
    }

    fn first_values(&self) -> Vec<T> {
        if self.lo.len() == 1 {
            return vec![T::zero()];
        }
        let mut v = Vec::new();
        let mut x = self.lo[0].clone();
        while x <= self.hi[0] {
            v.push(x.clone());
            x = x + T::one();
        }
        v
    }

    fn count(&self, exec: Execution) -> BigInt
    where
        T: Into<BigInt>,
    {
        let firsts = self.first_values();
        exec.map_slice(&firsts, |x0| {
            let mut total = BigInt::zero();
            self.walk(x0.clone(), &mut |_, lo, hi| {
                total += (hi - lo + T::one()).into();
            });
            total
        })
        .into_iter()
        .sum()
    }

    fn points(&self) -> Vec<Vec<T>> {
        let mut out = Vec::new();
        for x0 in self.first_values() {
            self.walk(x0, &mut |prefix, lo, hi| {
                let mut x = lo;
                while x <= hi {
                    let mut p = prefix.to_vec();
                    p.push(x.clone());
                    out.push(p);
                    x = x + T::one();
                }
            });
        }
        out
    }
}

const FAST_LIMIT: i128 = 1 << 40;

fn small(v: &BigInt) -> Option<i128> {
    v.to_i128().filter(|x| x.abs() < FAST_LIMIT)
}

fn fast_scan(rows: &[(Vec<BigInt>, BigInt)], lo: &[BigInt], hi: &[BigInt]) -> Option<Scan<i128>> {
    let conv = |v: &[BigInt]| v.iter().map(small).collect::<Option<Vec<i128>>>();
    Some(Scan {
        rows: rows
            .iter()
            .map(|(a, b)| Some((conv(a)?, small(b)?)))
            .collect::<Option<Vec<_>>>()?,
        lo: conv(lo)?,
        hi: conv(hi)?,
    })
}

/// Integer facet rows with offsets, and the bounding box corners.
type Prepared = (Vec<(Vec<BigInt>, BigInt)>, Vec<BigInt>, Vec<BigInt>);

impl Polytope {
    fn prepare(&self, limits: &Limits) -> Result<Option<Prepared>> {
        let (lo, hi) = bounding_box(self);
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(None);
        }
        let size: BigInt = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| h - l + BigInt::one())
            .product();
        if size > BigInt::from(limits.max_box) {
            return Err(Error::BoxTooLarge {
                size: size.to_string(),
                max: limits.max_box,
            });
        }
        Ok(Some((integer_rows(self), lo, hi)))
    }

    /// Number of lattice points (`ivol`).
    pub fn lattice_count(&self) -> Result<BigInt> {
        self.lattice_count_with(&Limits::default(), Execution::default())
    }

    pub fn lattice_count_with(&self, limits: &Limits, exec: Execution) -> Result<BigInt> {
        let Some((rows, lo, hi)) = self.prepare(limits)? else {
            return Ok(BigInt::zero());
        };
        Ok(match fast_scan(&rows, &lo, &hi) {
            Some(scan) => scan.count(exec),
            None => Scan { rows, lo, hi }.count(exec),
        })
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<ExponentVector>> {
        self.lattice_points_with(&Limits::default())
    }

    pub fn lattice_points_with(&self, limits: &Limits) -> Result<Vec<ExponentVector>> {
        let Some((rows, lo, hi)) = self.prepare(limits)? else {
            return Ok(Vec::new());
        };
        let pts: Vec<Vec<BigInt>> = Scan { rows, lo, hi }.points();
        pts.into_iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        num::to_i64(x).ok_or_else(|| Error::Range("lattice point exceeds i64".into()))
                    })
                    .collect::<Result<Vec<i64>>>()
                    .map(ExponentVector::new)
            })
            .collect()
    }
}
