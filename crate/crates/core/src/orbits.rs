//! Per-level orbit analysis: find a Hecke operator with squarefree cuspidal
//! charpoly and read off the Galois orbits on each Atkin-Lehner side.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::modp::{is_prime, next_prime};
use crate::arith::poly::IntPolynomial;
use crate::brandt::{al_permutation, al_split_charpolys, brandt_matrix};
use crate::error::{Error, Result};
use crate::polyfactor::{factor_over_integers, galois_group_small, is_squarefree, GaloisLabel};
use crate::quaternion::{left_ideal_classes, two_sided_prime_ideal, ClassSet};

pub const DEFAULT_P_BOUND: u64 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Exhausted,
}

/// An irreducible factor of degree at most 4 with its Galois group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallFactor {
    pub factor: IntPolynomial,
    pub label: GaloisLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub level: u64,
    pub dim_new: usize,
    pub min_p: Option<u64>,
    pub orbit_sizes: Vec<usize>,
    pub orbit_sizes_plus: Vec<usize>,
    pub orbit_sizes_minus: Vec<usize>,
    pub tried_primes: Vec<u64>,
    pub small_galois_labels: Vec<SmallFactor>,
    pub status: Status,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }

    pub fn dim_plus(&self) -> usize {
        self.orbit_sizes_plus.iter().sum()
    }

    pub fn dim_minus(&self) -> usize {
        self.orbit_sizes_minus.iter().sum()
    }

    /// Largest orbit on each side as a fraction of that side's dimension.
    pub fn max_orbit_fraction(&self) -> (Option<BigRational>, Option<BigRational>) {
        (side_fraction(&self.orbit_sizes_plus), side_fraction(&self.orbit_sizes_minus))
    }
}

/// `max(sizes) / sum(sizes)`, absent for an empty side.
pub fn side_fraction(sizes: &[usize]) -> Option<BigRational> {
    let total: usize = sizes.iter().sum();
    let max = *sizes.iter().max()?;
    Some(BigRational::new(BigInt::from(max), BigInt::from(total)))
}

/// The larger of the two side fractions.
pub fn max_orbit_fraction(report: &OrbitReport) -> Option<BigRational> {
    let (a, b) = report.max_orbit_fraction();
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Cuspidal charpolys of `T_p` on the two Atkin-Lehner sides.
pub struct LevelData {
    pub classes: ClassSet,
    pub al: crate::brandt::AlPermutation,
}

impl LevelData {
    pub fn new(n: u64) -> Result<Self> {
        let classes = left_ideal_classes(n)?;
        let al = al_permutation(&classes, &two_sided_prime_ideal(classes.order())?)?;
        Ok(LevelData { classes, al })
    }

    pub fn split(&self, p: u64) -> Result<(IntPolynomial, IntPolynomial)> {
        al_split_charpolys(&brandt_matrix(&self.classes, p)?, &self.al)
    }
}

fn side_degrees(f: &IntPolynomial, labels: &mut Vec<SmallFactor>) -> Result<Vec<usize>> {
    let fac = factor_over_integers(f)?;
    for (q, _) in &fac.factors {
        if q.deg() <= 4 {
            labels.push(SmallFactor {
                factor: q.clone(),
                label: galois_group_small(q)?,
            });
        }
    }
    Ok(fac.degrees())
}

/// Try `T_2, T_3, T_5, ...` (skipping `N`) up to `p_bound` until the cuspidal
/// charpoly is squarefree.
pub fn analyze_level(n: u64, p_bound: u64) -> Result<OrbitReport> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if p_bound < 2 {
        return Err(Error::invalid("p_bound must be at least 2"));
    }
    let data = LevelData::new(n)?;
    let dim_new = data.classes.len() - 1;
    let mut tried = Vec::new();
    let mut last = None;
    let mut p = 2;
    while p <= p_bound {
        if p != n {
            tried.push(p);
            let (plus, minus) = data.split(p)?;
            let squarefree = is_squarefree(&(&plus * &minus))?;
            last = Some((plus, minus));
            if squarefree {
                break;
            }
        }
        p = next_prime(p);
    }
    let Some((plus, minus)) = last else {
        return Err(Error::invalid(format!("no Hecke prime up to {p_bound} for level {n}")));
    };
    let status = if p <= p_bound { Status::Ok } else { Status::Exhausted };
    let mut labels = Vec::new();
    let orbit_sizes_plus = side_degrees(&plus, &mut labels)?;
    let orbit_sizes_minus = side_degrees(&minus, &mut labels)?;
    let mut orbit_sizes: Vec<usize> = orbit_sizes_plus
        .iter()
        .chain(&orbit_sizes_minus)
        .copied()
        .collect();
    orbit_sizes.sort_unstable();
    if orbit_sizes.iter().sum::<usize>() != dim_new {
        return Err(Error::internal("orbit sizes do not add up to the dimension"));
    }
    Ok(OrbitReport {
        level: n,
        dim_new,
        min_p: (status == Status::Ok).then_some(p),
        orbit_sizes,
        orbit_sizes_plus,
        orbit_sizes_minus,
        tried_primes: tried,
        small_galois_labels: labels,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = analyze_level(11, DEFAULT_P_BOUND).unwrap();
        assert_eq!(r.orbit_sizes, vec![1]);
        assert_eq!(r.min_p, Some(2));
        assert_eq!(r.orbit_sizes_plus, vec![1]);
        let r = analyze_level(13, DEFAULT_P_BOUND).unwrap();
        assert_eq!(r.orbit_count(), 0);
        assert_eq!(r.dim_new, 0);
        assert_eq!(max_orbit_fraction(&r), None);
        assert!(matches!(analyze_level(15, 97), Err(Error::NotPrime(15))));
    }

    #[test]
    fn level_251() {
        let r = analyze_level(251, DEFAULT_P_BOUND).unwrap();
        assert_eq!(r.orbit_sizes, vec![4, 17]);
        assert_eq!(r.orbit_sizes_plus, vec![17]);
        assert_eq!(r.orbit_sizes_minus, vec![4]);
        assert!(r.min_p.unwrap() > 2);
        assert_eq!(r.tried_primes[0], 2);
        let quartic: Vec<_> = r.small_galois_labels.iter().filter(|s| s.factor.deg() == 4).collect();
        assert_eq!(quartic.len(), 1);
        assert_eq!(quartic[0].label, GaloisLabel::D4);
        let one = BigRational::from(BigInt::from(1));
        assert_eq!(r.max_orbit_fraction(), (Some(one.clone()), Some(one)));
    }

    #[test]
    fn fractions() {
        assert_eq!(
            side_fraction(&[2, 1]),
            Some(BigRational::new(BigInt::from(2), BigInt::from(3)))
        );
        assert_eq!(side_fraction(&[]), None);
    }

    #[test]
    fn exhaustion_is_a_status() {
        let r = analyze_level(251, 2).unwrap();
        assert_eq!(r.status, Status::Exhausted);
        assert_eq!(r.min_p, None);
        assert_eq!(r.orbit_sizes.iter().sum::<usize>(), 21);
    }

    /// A second squarefree prime gives the same orbit sizes.
    #[test]
    fn independent_of_prime() {
        for n in crate::arith::modp::primes_up_to(200) {
            let r = analyze_level(n, DEFAULT_P_BOUND).unwrap();
            let Some(p0) = r.min_p else { continue };
            let data = LevelData::new(n).unwrap();
            let mut p = next_prime(p0);
            while p == n || {
                let (a, b) = data.split(p).unwrap();
                !is_squarefree(&(&a * &b)).unwrap()
            } {
                p = next_prime(p);
            }
            let (a, b) = data.split(p).unwrap();
            let mut sizes = factor_over_integers(&a).unwrap().degrees();
            sizes.extend(factor_over_integers(&b).unwrap().degrees());
            sizes.sort_unstable();
            assert_eq!(sizes, r.orbit_sizes, "N = {n}, p = {p}");
        }
    }
}
