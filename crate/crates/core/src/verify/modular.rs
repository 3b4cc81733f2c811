//! Word-size prime-field arithmetic and Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^61`.
pub(crate) fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = (1 << 61) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

pub(crate) fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Determinant modulo a prime by Gaussian elimination.
pub(crate) fn det(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut acc = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if r != c {
            m.swap(r, c);
            acc = (p - acc) % p;
        }
        let piv = m[c][c];
        acc = mul(acc, piv, p);
        let pinv = inv(piv, p);
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul(m[r][c], pinv, p);
            for j in c..n {
                let s = mul(f, m[c][j], p);
                m[r][j] = (m[r][j] + p - s) % p;
            }
        }
    }
    acc
}

/// Coefficients (low to high) of the polynomial through `(xs[i], ys[i])`.
pub(crate) fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    // Newton divided differences.
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            dd[i] = mul(num, inv(den, p), p);
        }
    }
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs·(t - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + coeffs[k]) % p;
            }
            let s = mul(coeffs[k], xs[i], p);
            next[k] = (next[k] + p - s) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        coeffs = next;
    }
    coeffs
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd of two polynomials over `F_p` (coefficients low to high).
pub(crate) fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().expect("nonzero"), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul(*a.last().expect("nonzero"), lb, p);
            for (j, &bc) in b.iter().enumerate() {
                let s = mul(f, bc, p);
                a[j + shift] = (a[j + shift] + p - s) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let li = inv(l, p);
        for c in &mut a {
            *c = mul(*c, li, p);
        }
    }
    a
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mul(c, k as u64 % p, p))
        .collect()
}

/// Incremental Chinese remaindering of vectors of residues.
pub(crate) struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub(crate) fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub(crate) fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub(crate) fn add(&mut self, residues: &[u64], p: u64) {
        let pb = BigInt::from(p);
        let m_mod_p = reduce(&self.modulus, p);
        let m_inv = inv(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = reduce(v, p);
            let delta = mul((r + p - cur) % p, m_inv, p);
            *v += &self.modulus * BigInt::from(delta);
        }
        self.modulus *= pb;
    }

    /// Values in the symmetric range `(-M/2, M/2]`.
    pub(crate) fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus / 2;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }
}

pub(crate) fn abs_sum(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverse() {
        let ps = primes(3);
        assert_eq!(ps[0], (1 << 61) - 1);
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert_eq!(mul(inv(12345, ps[1]), 12345, ps[1]), 1);
        assert!(!is_prime(561));
    }

    #[test]
    fn det_and_interpolation() {
        let p = 1_000_000_007;
        assert_eq!(det(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]], p), 6);
        assert_eq!(det(vec![vec![0, 1], vec![1, 0]], p), p - 1);
        // 3 + 2t + t^2
        let xs = [0, 1, 2];
        let ys = [3, 6, 11];
        assert_eq!(interpolate(&xs, &ys, p), vec![3, 2, 1]);
    }

    #[test]
    fn gcd_and_crt() {
        let p = 1_000_000_007;
        // (t-1)(t-2) and (t-1)(t+3)
        let a = [2, p - 3, 1];
        let b = [p - 3, 2, 1];
        assert_eq!(poly_gcd(&a, &b, p), vec![p - 1, 1]);
        let mut crt = Crt::new(1);
        let v = BigInt::from(-123_456_789_012_345_678_i64) * BigInt::from(1_000_003);
        for q in primes(2) {
            crt.add(&[reduce(&v, q)], q);
        }
        assert_eq!(crt.symmetric()[0], v);
    }
}
