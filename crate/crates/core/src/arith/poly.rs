//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial, coefficients stored lowest degree first.
///
/// The representation is normalized: no trailing zero coefficients, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear_root(r: BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `f(x) -> f(x) * x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Square of the Euclidean norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Exact division by a nonzero polynomial. Returns `None` unless the
    /// quotient exists in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, m) = (self.deg(), d.deg());
        if n < m {
            return None;
        }
        let lead = d.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let m = d.deg();
        if self.deg() < m || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let n = self.deg();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let qk = rem[k + m].clone();
            if qk.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        rem.truncate(m);
        (Self::new(q), Self::new(rem))
    }

    /// Pseudo-remainder: `lc(d)^(deg f - deg d + 1) * f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.deg() < d.deg() || self.is_zero() {
            return self.clone();
        }
        let m = d.deg();
        let lead = d.lead().unwrap().clone();
        let mut rem = self.clone();
        let mut e = (self.deg() - m + 1) as u32;
        while !rem.is_zero() && rem.deg() >= m {
            let top = rem.lead().unwrap().clone();
            let off = rem.deg() - m;
            let mut c = rem.coeffs;
            for x in c.iter_mut() {
                *x *= &lead;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                c[off + i] -= &top * dc;
            }
            rem = Self::new(c);
            e -= 1;
        }
        rem.scale(&num_traits::pow(lead, e as usize))
    }

    /// Synthetic division by `x - r`: returns the quotient and `f(r)`.
    pub fn deflate(&self, r: &BigInt) -> (Self, BigInt) {
        if self.is_zero() {
            return (Self::zero(), BigInt::zero());
        }
        let n = self.deg();
        let mut q = vec![BigInt::zero(); n];
        let mut acc = BigInt::zero();
        for k in (0..=n).rev() {
            acc = acc * r + &self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Self::new(q), acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Compose with `x -> -x`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients are serialized as decimal strings so nothing is lost when a
/// consumer parses JSON numbers as doubles.
impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = p(&[-1, 1]);
        let g = p(&[1, 1]);
        assert_eq!(&f * &g, p(&[-1, 0, 1]));
        assert_eq!((&f * &g).to_string(), "x^2 - 1");
        assert_eq!(p(&[-6, -1, 1]).to_string(), "x^2 - x - 6");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(&p(&[1, 2, 3]) - &p(&[1, 2, 3]), IntPolynomial::zero());
    }

    #[test]
    fn divisions() {
        let f = p(&[-6, -1, 1]);
        let (q, r) = f.deflate(&BigInt::from(3));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(f.div_exact(&p(&[2, 1])), Some(p(&[-3, 1])));
        assert_eq!(f.div_exact(&p(&[1, 2])), None);
        let (q, r) = p(&[1, 0, 0, 1]).divrem_monic(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        // prem(x^2 + 1, 2x + 1) = 4(x^2+1) mod (2x+1) = 5
        assert_eq!(p(&[1, 0, 1]).pseudo_rem(&p(&[1, 2])), p(&[5]));
    }

    #[test]
    fn content_and_serde() {
        let f = p(&[-4, 6, -2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), p(&[2, -3, 1]));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["-4","6","-2"]"#);
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
