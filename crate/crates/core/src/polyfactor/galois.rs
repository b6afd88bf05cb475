//! Galois groups of irreducible polynomials of degree at most 4.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{factor_over_integers, is_square};
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisLabel {
    C1,
    C2,
    C3,
    S3,
    C4,
    V4,
    /// Dihedral of order 8.
    D4,
    A4,
    S4,
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `lc^(n-1) f(x / lc)`: monic with the same splitting field.
fn monicize(f: &IntPolynomial) -> Vec<BigInt> {
    let n = f.deg();
    let lc = f.lead().unwrap().clone();
    let mut pw = BigInt::from(1);
    let mut out = vec![BigInt::from(0); n + 1];
    for i in (0..=n).rev() {
        out[i] = f.coeff(i) * &pw / &lc;
        pw *= &lc;
    }
    out[n] = BigInt::from(1);
    out
}

/// Discriminant of the monic cubic `y^3 + p y^2 + q y + r`.
fn cubic_disc(p: &BigInt, q: &BigInt, r: &BigInt) -> BigInt {
    p * p * q * q - q * q * q * 4 - p * p * p * r * 4 - r * r * 27 + p * q * r * 18
}

/// Label of the Galois group of an irreducible `f` with `deg f <= 4`.
pub fn galois_group_small(f: &IntPolynomial) -> Result<GaloisLabel> {
    if f.is_zero() || f.deg() == 0 || f.deg() > 4 {
        return Err(Error::invalid("galois_group_small needs degree 1 to 4"));
    }
    let fac = factor_over_integers(f)?;
    if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
        return Err(Error::Reducible);
    }
    let c = monicize(f);
    match f.deg() {
        1 => Ok(GaloisLabel::C1),
        2 => Ok(GaloisLabel::C2),
        3 => {
            let d = cubic_disc(&c[2], &c[1], &c[0]);
            Ok(if is_square(&d) {
                GaloisLabel::C3
            } else {
                GaloisLabel::S3
            })
        }
        _ => quartic(&c),
    }
}

/// `x^4 + a x^3 + b x^2 + c x + d`, via the resolvent cubic
/// `y^3 - b y^2 + (ac - 4d) y - (a^2 d + c^2 - 4bd)`.
fn quartic(co: &[BigInt]) -> Result<GaloisLabel> {
    let (a, b, c, d) = (&co[3], &co[2], &co[1], &co[0]);
    let rp: BigInt = -b;
    let rq: BigInt = a * c - d * 4;
    let t: BigInt = a * a * d + c * c - b * d * 4;
    let rr = -t;
    let disc = cubic_disc(&rp, &rq, &rr);
    let resolvent = IntPolynomial::new(vec![rr.clone(), rq.clone(), rp.clone(), BigInt::from(1)]);
    let rf = factor_over_integers(&resolvent)?;
    let roots: Vec<BigInt> = rf
        .factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .flat_map(|(g, e)| std::iter::repeat(-g.coeff(0)).take(*e as usize))
        .collect();
    Ok(match roots.len() {
        0 => {
            if is_square(&disc) {
                GaloisLabel::A4
            } else {
                GaloisLabel::S4
            }
        }
        1 => {
            let theta = &roots[0];
            let d1: BigInt = theta * theta - d * 4;
            let d2: BigInt = a * a - (b - theta) * 4;
            let splits = |delta: &BigInt| is_square(delta) || is_square(&(delta * &disc));
            if splits(&d1) && splits(&d2) {
                GaloisLabel::C4
            } else {
                GaloisLabel::D4
            }
        }
        _ => GaloisLabel::V4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(galois_group_small(&p(&[-2, 0, 0, 0, 1])).unwrap(), GaloisLabel::D4);
        assert_eq!(galois_group_small(&p(&[1, 0, 0, 0, 1])).unwrap(), GaloisLabel::V4);
        assert_eq!(galois_group_small(&p(&[1, 1, 0, 0, 1])).unwrap(), GaloisLabel::S4);
        assert!(matches!(
            galois_group_small(&p(&[-1, 0, 1])),
            Err(Error::Reducible)
        ));
        assert!(galois_group_small(&p(&[1, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn more_groups() {
        assert_eq!(galois_group_small(&p(&[3, 1])).unwrap(), GaloisLabel::C1);
        assert_eq!(galois_group_small(&p(&[1, 1, 1])).unwrap(), GaloisLabel::C2);
        // x^3 - 3x + 1 has discriminant 81
        assert_eq!(galois_group_small(&p(&[1, -3, 0, 1])).unwrap(), GaloisLabel::C3);
        assert_eq!(galois_group_small(&p(&[-2, 0, 0, 1])).unwrap(), GaloisLabel::S3);
        // fifth cyclotomic polynomial
        assert_eq!(galois_group_small(&p(&[1, 1, 1, 1, 1])).unwrap(), GaloisLabel::C4);
        // x^4 + 8x + 12 has group A4
        assert_eq!(galois_group_small(&p(&[12, 8, 0, 0, 1])).unwrap(), GaloisLabel::A4);
        // x^4 - 10x^2 + 1, minimal polynomial of sqrt2 + sqrt3
        assert_eq!(galois_group_small(&p(&[1, 0, -10, 0, 1])).unwrap(), GaloisLabel::V4);
        // non-monic: 2x^4 - 1 has the same field as x^4 - 8
        assert_eq!(galois_group_small(&p(&[-1, 0, 0, 0, 2])).unwrap(), GaloisLabel::D4);
        // 3x^3 - 1 generates the field of x^3 - 9
        assert_eq!(galois_group_small(&p(&[-1, 0, 0, 3])).unwrap(), GaloisLabel::S3);
    }
}
