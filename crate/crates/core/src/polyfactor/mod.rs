//! Factorization of integer polynomials and Galois groups in degree at most 4.

mod galois;
pub mod zassenhaus;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::fp_poly as fp;
use crate::arith::modp::word_primes;
use crate::arith::poly::IntPolynomial;
use crate::arith::sturm;
use crate::error::{Error, Result};

pub use galois::{galois_group_small, GaloisLabel};

/// `unit * prod factor^multiplicity`, with primitive irreducible factors of
/// positive leading coefficient. `unit` is the signed content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl FactoredPoly {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.unit.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat(f.deg()).take(*e as usize))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// `gcd(f, f')` is constant.
pub fn is_squarefree(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::invalid("is_squarefree of the zero polynomial"));
    }
    if f.deg() <= 1 {
        return Ok(true);
    }
    // A prime not dividing the leading coefficient at which f stays
    // squarefree certifies a nonzero discriminant.
    for &p in word_primes().iter().take(4) {
        let fm = fp::from_int(f, p);
        if fm.len() == f.deg() + 1 && fp::gcd(&fm, &fp::derivative(&fm, p), p).len() == 1 {
            return Ok(true);
        }
    }
    Ok(sturm::gcd(f, &f.derivative()).is_constant())
}

/// Complete factorization over Z.
pub fn factor_over_integers(f: &IntPolynomial) -> Result<FactoredPoly> {
    if f.is_zero() {
        return Err(Error::invalid("factorization of the zero polynomial"));
    }
    let mut unit = f.content();
    if f.lead().unwrap().is_negative() {
        unit = -unit;
    }
    let g = f.primitive_part();
    if g.deg() == 0 {
        return Ok(FactoredPoly {
            unit,
            factors: Vec::new(),
        });
    }
    let sqf = sturm::squarefree_part(&g);
    let mut factors = Vec::new();
    for q in zassenhaus::factor_squarefree(&sqf) {
        let mut e = 0u32;
        let mut rest = g.clone();
        while let Some(next) = rest.div_exact(&q) {
            rest = next;
            e += 1;
        }
        debug_assert!(e > 0);
        factors.push((q, e));
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(FactoredPoly { unit, factors })
}

/// Degrees of the irreducible factors of a squarefree polynomial, sorted.
pub fn orbit_degrees(f: &IntPolynomial) -> Result<Vec<usize>> {
    if !is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    Ok(factor_over_integers(f)?.degrees())
}

/// `c` is a perfect square in Z.
pub(crate) fn is_square(c: &BigInt) -> bool {
    if c.is_negative() {
        return false;
    }
    if c.is_zero() || c.is_one() {
        return true;
    }
    let r = c.sqrt();
    &r * &r == *c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&p(&[-1, 0, 1])).unwrap());
        assert!(!is_squarefree(&p(&[1, -2, 1])).unwrap());
        assert!(is_squarefree(&p(&[-1, 1, 1])).unwrap());
        assert!(is_squarefree(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factor_over_integers(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let g = p(&[-1, 1, 1]);
        let f = factor_over_integers(&g.pow(2)).unwrap();
        assert_eq!(f.factors, vec![(g, 2)]);
        let f = factor_over_integers(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        let f = factor_over_integers(&p(&[-12, 0, 6])).unwrap();
        assert_eq!(f.unit, BigInt::from(6));
        assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 1)]);
        let f = factor_over_integers(&p(&[4, -2])).unwrap();
        assert_eq!(f.unit, BigInt::from(-2));
        assert_eq!(f.expand(), p(&[4, -2]));
    }

    /// Brute-force search for a factor of degree 1 or 2 with small
    /// coefficients, as an oracle for x^4 + 1.
    #[test]
    fn x4_plus_1_has_no_small_factor() {
        let f = p(&[1, 0, 0, 0, 1]);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for lead in [0i64, 1] {
                    let q = if lead == 1 { p(&[b, a, 1]) } else { p(&[b, 1]) };
                    assert!(f.div_exact(&q).is_none());
                }
            }
        }
    }

    #[test]
    fn orbit_degree_examples() {
        assert_eq!(orbit_degrees(&p(&[2, 1])).unwrap(), vec![1]);
        let f = &p(&[-1, 1]) * &p(&[-2, 0, 1]);
        assert_eq!(orbit_degrees(&f).unwrap(), vec![1, 2]);
        assert!(matches!(orbit_degrees(&p(&[1, -2, 1])), Err(Error::NotSquarefree)));
    }

    #[test]
    fn non_monic_and_zero_root() {
        // (2x - 1)(3x^2 + 1) x (x + 5)^2
        let f = &(&(&p(&[-1, 2]) * &p(&[1, 0, 3])) * &p(&[0, 1])) * &p(&[5, 1]).pow(2);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.degrees(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn binomials() {
        let binom = |n: usize| {
            let mut c = vec![0i64; n + 1];
            c[0] = 2;
            c[n] = 1;
            p(&c)
        };
        let f = &(&binom(7) * &binom(8)) * &binom(9);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.degrees(), vec![7, 8, 9]);
        assert_eq!(fac.expand(), f);
    }

    /// Rational root test; in degree <= 3 its absence means irreducible.
    fn has_rational_root(f: &IntPolynomial) -> bool {
        let divisors = |c: &BigInt| -> Vec<i64> {
            let c = c.abs().to_string().parse::<i64>().unwrap();
            (1..=c).filter(|d| c % d == 0).collect()
        };
        if f.coeff(0).is_zero() {
            return true;
        }
        for num in divisors(&f.coeff(0)) {
            for den in divisors(f.lead().unwrap()) {
                for s in [1, -1] {
                    let r = num_rational::BigRational::new((s * num).into(), den.into());
                    if f.eval_rational(&r).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn irreducible_small() -> impl Strategy<Value = IntPolynomial> {
        (1usize..=3)
            .prop_flat_map(|d| proptest::collection::vec(-20i64..=20, d + 1))
            .prop_filter_map("reducible", |c| {
                let f = IntPolynomial::from_i64s(&c);
                if f.is_zero() || f.deg() == 0 || c.last() == Some(&0) {
                    return None;
                }
                let f = f.primitive_part();
                (f.deg() == 1 || !has_rational_root(&f)).then_some(f)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn recovers_products(fs in proptest::collection::vec(irreducible_small(), 2..=4)) {
            let prod = fs.iter().fold(IntPolynomial::one(), |a, f| &a * f);
            let fac = factor_over_integers(&prod).unwrap();
            prop_assert_eq!(fac.expand(), prod.clone());
            let mut expected: Vec<(IntPolynomial, u32)> = Vec::new();
            for f in &fs {
                match expected.iter_mut().find(|(g, _)| g == f) {
                    Some((_, e)) => *e += 1,
                    None => expected.push((f.clone(), 1)),
                }
            }
            let mut got = fac.factors.clone();
            let key = |x: &(IntPolynomial, u32)| (x.0.deg(), x.0.coeffs().to_vec());
            expected.sort_by_key(key);
            got.sort_by_key(key);
            prop_assert_eq!(got, expected);
            prop_assert_eq!(is_squarefree(&prod).unwrap(), fac.is_squarefree());
            prop_assert!(!is_squarefree(&(&prod * &prod)).unwrap());
            prop_assert_eq!(fac.degrees().iter().sum::<usize>(), prod.deg());
        }
    }
}
