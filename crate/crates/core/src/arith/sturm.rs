//! Real root counting by Sturm sequences over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp_poly as fp;
use super::modp::{inv_mod, word_primes};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Squarefree part `f / gcd(f, f')` via the primitive remainder sequence.
pub fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    let g = gcd(f, &f.derivative());
    if g.is_constant() {
        return f.primitive_part();
    }
    // f is divisible by g over Q; clear the leading coefficient first.
    let lead = num_traits::pow(g.lead().unwrap().clone(), f.deg() - g.deg() + 1);
    f.scale(&lead)
        .div_exact(&g)
        .expect("gcd divides its argument up to a unit")
        .primitive_part()
}

/// Primitive gcd over Z[x], with positive leading coefficient.
///
/// Images modulo word primes are combined by CRT until they stabilise and
/// the candidate divides both inputs; the primitive remainder sequence is
/// only a fallback.
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let (a, b) = (a.primitive_part(), b.primitive_part());
    if a.is_constant() || b.is_constant() {
        return IntPolynomial::one();
    }
    modular_gcd(&a, &b).unwrap_or_else(|| prs_gcd(&a, &b))
}

fn modular_gcd(a: &IntPolynomial, b: &IntPolynomial) -> Option<IntPolynomial> {
    let c = a.lead()?.gcd(b.lead()?);
    let mut deg = a.deg().min(b.deg()) + 1;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for &p in word_primes() {
        let (am, bm) = (fp::from_int(a, p), fp::from_int(b, p));
        if am.len() != a.deg() + 1 || bm.len() != b.deg() + 1 {
            continue;
        }
        let g = fp::gcd(&am, &bm, p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(IntPolynomial::one());
        }
        if d > deg {
            continue;
        }
        let g = fp::scale(&g, fp::reduce_int(&c, p), p);
        if d < deg {
            deg = d;
            acc = fp::to_int_symmetric(&g, p).into_coeffs();
            modulus = BigInt::from(p);
            continue;
        }
        // coefficients stay in (-M/2, M/2], so a stable image means k = 0
        let inv = inv_mod(fp::reduce_int(&modulus, p), p);
        let next = &modulus * p;
        let half = &next >> 1u32;
        let mut changed = false;
        for (x, &r) in acc.iter_mut().zip(&g) {
            let t = (r + p - fp::reduce_int(x, p)) % p;
            let k = t * inv % p;
            if k != 0 {
                *x += &modulus * k;
                if *x > half {
                    *x -= &next;
                }
                changed = true;
            }
        }
        modulus = next;
        if !changed {
            let cand = IntPolynomial::new(acc.clone()).primitive_part();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
    }
    None
}

fn prs_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut x, mut y) = if a.deg() >= b.deg() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !y.is_zero() {
        let r = x.pseudo_rem(&y).primitive_part();
        x = y;
        y = r;
    }
    x.primitive_part()
}

/// Sturm sequence `f, f', -rem(...)`, each term kept primitive. Pseudo
/// remainders are sign-corrected so that each term has the sign of the true
/// remainder.
pub fn sturm_sequence(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() {
            seq.pop();
            break;
        }
        let mut r = a.pseudo_rem(b);
        let delta = a.deg() as i64 - b.deg() as i64 + 1;
        if b.lead().unwrap().is_negative() && delta.rem_euclid(2) == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let next = IntPolynomial::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
        seq.push(next);
    }
    seq
}

fn variations(seq: &[IntPolynomial], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval_rational(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `f` in the half-open interval `(a, b]`.
pub fn sturm_count(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::invalid("sturm_count of the zero polynomial"));
    }
    if a >= b || f.is_constant() {
        return Ok(0);
    }
    let seq = sturm_sequence(&squarefree_part(f));
    Ok(variations(&seq, a).saturating_sub(variations(&seq, b)))
}

/// Convenience for integer endpoints.
pub fn sturm_count_int(f: &IntPolynomial, a: i64, b: i64) -> Result<usize> {
    sturm_count(
        f,
        &BigRational::from(BigInt::from(a)),
        &BigRational::from(BigInt::from(b)),
    )
}
