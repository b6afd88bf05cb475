//! Polynomials over a prime field F_p with p < 2^31, coefficients lowest first.
//!
//! Vectors are kept normalized (no trailing zeros); the empty vector is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::modp::inv_mod;
use super::poly::IntPolynomial;

pub type Fpx = Vec<u64>;

#[inline]
pub fn trim(v: &mut Fpx) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn from_int(f: &IntPolynomial, p: u64) -> Fpx {
    let mut v: Fpx = f.coeffs().iter().map(|c| reduce_int(c, p)).collect();
    trim(&mut v);
    v
}

/// Lift to integers with symmetric representatives in (-p/2, p/2].
pub fn to_int_symmetric(f: &[u64], p: u64) -> IntPolynomial {
    IntPolynomial::new(
        f.iter()
            .map(|&c| {
                if c > p / 2 {
                    BigInt::from(c) - BigInt::from(p)
                } else {
                    BigInt::from(c)
                }
            })
            .collect(),
    )
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    let mut out: Fpx = (0..n)
        .map(|i| {
            let s = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            if s >= p {
                s - p
            } else {
                s
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    let mut out: Fpx = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y {
                x - y
            } else {
                x + p - y
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], s: u64, p: u64) -> Fpx {
    let mut out: Fpx = a.iter().map(|&c| c * s % p).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fpx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn monic(a: &[u64], p: u64) -> Fpx {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let m = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - m];
    for k in (0..q.len()).rev() {
        let c = r[k + m] * inv % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bc % p) % p;
        }
    }
    r.truncate(m);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fpx {
    divrem(a, b, p).1
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: returns monic `g` with `s*a + t*b = g`.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx, Fpx) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Fpx, Fpx) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fpx, Fpx) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&l) => {
            let inv = inv_mod(l, p);
            (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
        }
    }
}

pub fn derivative(a: &[u64], p: u64) -> Fpx {
    let mut out: Fpx = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fpx {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m` for a nonnegative exponent.
pub fn powmod(base: &[u64], e: &BigInt, m: &[u64], p: u64) -> Fpx {
    let mut acc: Fpx = rem(&[1], m, p);
    let b = rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = mulmod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = mulmod(&acc, &b, m, p);
        }
    }
    acc
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ring_ops() {
        let p = 7;
        let a = vec![1, 1]; // x + 1
        let b = vec![6, 1]; // x - 1
        let ab = mul(&a, &b, p);
        assert_eq!(ab, vec![6, 0, 1]);
        let (q, r) = divrem(&ab, &a, p);
        assert_eq!(q, b);
        assert!(r.is_empty());
        assert_eq!(gcd(&ab, &mul(&a, &a, p), p), a);
        let (g, s, t) = xgcd(&vec![1, 0, 1], &vec![1, 1], p);
        assert_eq!(g, vec![1]);
        let lhs = add(&mul(&s, &[1, 0, 1], p), &mul(&t, &[1, 1], p), p);
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn frobenius_power() {
        // x^p = x mod (x^p - x) trivially; check x^(7^2) mod x^2+1 over F_7 is x.
        let p = 7;
        let m = vec![1, 0, 1];
        let r = powmod(&[0, 1], &BigInt::from(49), &m, p);
        assert_eq!(r, vec![0, 1]);
    }

    #[test]
    fn symmetric_lift() {
        let f = to_int_symmetric(&[6, 1, 4], 7);
        assert_eq!(f, IntPolynomial::from_i64s(&[-1, 1, -3]));
    }
}
