//! Presentations `(a, b)` of the definite quaternion algebra ramified at `{N, inf}`.

use serde::{Deserialize, Serialize};

use crate::arith::hilbert::{hilbert_symbol, Place};
use crate::arith::modp::{factorize, is_prime, legendre};
use crate::error::{Error, Result};

/// `i^2 = a`, `j^2 = b`, `k = ij = -ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub a: i64,
    pub b: i64,
    pub level: u64,
}

impl AlgebraPresentation {
    /// Places where the algebra is ramified among primes dividing `2ab` and
    /// infinity.
    pub fn ramified_places(&self) -> Vec<Place> {
        let mut places: Vec<Place> = factorize((2 * self.a * self.b).unsigned_abs())
            .into_iter()
            .map(|(p, _)| Place::Prime(p))
            .collect();
        places.push(Place::Infinity);
        places
            .into_iter()
            .filter(|&pl| hilbert_symbol(self.a, self.b, pl).expect("nonzero") == -1)
            .collect()
    }

    /// True when the ramification set is exactly `{N, inf}`.
    pub fn is_valid(&self) -> bool {
        self.ramified_places() == vec![Place::Prime(self.level), Place::Infinity]
    }
}

/// Deterministic presentation by the residue of `N` mod 8.
pub fn algebra_for_level(n: u64) -> Result<AlgebraPresentation> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let ni = n as i64;
    let (a, b) = if n == 2 {
        (-1, -1)
    } else if n % 4 == 3 {
        (-1, -ni)
    } else if n % 8 == 5 {
        (-2, -ni)
    } else {
        let q = (3..)
            .step_by(4)
            .find(|&q| is_prime(q) && legendre(q as i64, n) == -1)
            .expect("a non-residue prime 3 mod 4 exists");
        (-(q as i64), -ni)
    };
    let alg = AlgebraPresentation { a, b, level: n };
    if !alg.is_valid() {
        return Err(Error::internal(format!("presentation {a},{b} has wrong ramification")));
    }
    Ok(alg)
}

/// Presentations `(-q, -N)` with `q` prime, `q = 3 mod 4`, in increasing `q`,
/// restricted to those with the correct ramification.
pub fn auxiliary_presentations(n: u64) -> impl Iterator<Item = AlgebraPresentation> {
    (3u64..)
        .step_by(4)
        .filter(move |&q| is_prime(q) && q != n)
        .map(move |q| AlgebraPresentation {
            a: -(q as i64),
            b: -(n as i64),
            level: n,
        })
        .filter(AlgebraPresentation::is_valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modp::primes_up_to;

    #[test]
    fn examples() {
        let p = |n| {
            let a = algebra_for_level(n).unwrap();
            (a.a, a.b)
        };
        assert_eq!(p(2), (-1, -1));
        assert_eq!(p(3), (-1, -3));
        assert_eq!(p(5), (-2, -5));
        assert_eq!(p(17), (-3, -17));
        assert_eq!(p(41), (-3, -41));
        assert!(matches!(algebra_for_level(15), Err(Error::NotPrime(15))));
    }

    #[test]
    fn ramification_for_all_small_primes() {
        for n in primes_up_to(2500) {
            let alg = algebra_for_level(n).unwrap();
            assert!(alg.is_valid(), "N = {n}");
            // The checked place set covers every prime dividing 2abN.
            assert_eq!(hilbert_symbol(alg.a, alg.b, Place::Prime(n)).unwrap(), -1);
        }
    }

    #[test]
    fn auxiliary_presentations_exist() {
        for n in primes_up_to(100).into_iter().skip(1) {
            let alts: Vec<_> = auxiliary_presentations(n).take(2).collect();
            assert_eq!(alts.len(), 2, "N = {n}");
        }
    }
}
