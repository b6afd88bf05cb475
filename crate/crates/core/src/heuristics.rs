//! A random-polynomial model for factor degrees of Hecke polynomials.
//!
//! `R_d(t)` approximates the number of monic integer polynomials of degree
//! `d` with all roots real and bounded by `t`; `P_{d,e}(t)` is the resulting
//! chance of a degree-`e` factor. Everything is exact over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::modp::{euler_phi, squarefree_factors};
use crate::error::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_t(t: &BigRational) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::invalid("t must be positive"));
    }
    Ok(())
}

fn check_range(d: u64, e: u64) -> Result<()> {
    if e < 1 || 2 * e > d {
        return Err(Error::invalid(format!("need 1 <= e <= d/2, got d = {d}, e = {e}")));
    }
    Ok(())
}

/// `(2t)^(d(d+1)/2) prod_{j=1}^{d} (j-1)!^2 / (2j-1)!`.
pub fn r_poly_count(d: u64, t: &BigRational) -> Result<BigRational> {
    if d < 1 {
        return Err(Error::invalid("r_poly_count needs d >= 1"));
    }
    check_t(t)?;
    let two_t = t * BigInt::from(2);
    let mut acc = num_traits::pow(two_t, (d * (d + 1) / 2) as usize);
    for j in 1..=d {
        let f = factorial(j - 1);
        acc = acc * BigRational::new(&f * &f, factorial(2 * j - 1));
    }
    Ok(acc)
}

/// `R_e R_{d-e} / (2^delta R_d)` with `delta = 1` iff `d = 2e`.
pub fn split_prob(d: u64, e: u64, t: &BigRational) -> Result<BigRational> {
    check_range(d, e)?;
    let num = r_poly_count(e, t)? * r_poly_count(d - e, t)?;
    let mut den = r_poly_count(d, t)?;
    if d == 2 * e {
        den = den * BigInt::from(2);
    }
    Ok(num / den)
}

/// The product form of `split_prob`.
pub fn split_prob_closed(d: u64, e: u64, t: &BigRational) -> Result<BigRational> {
    check_range(d, e)?;
    check_t(t)?;
    let ratio = |j: u64| rat(2 * j as i64 + 1, j as i64);
    let mut acc = BigRational::one();
    for j in 1..e {
        acc *= num_traits::pow(ratio(j), j as usize);
    }
    for j in e..d - e {
        acc *= num_traits::pow(ratio(j), e as usize);
    }
    for j in d - e..d {
        acc *= num_traits::pow(ratio(j), (d - j) as usize);
    }
    let mut den = num_traits::pow(t.clone(), (e * (d - e)) as usize);
    if d == 2 * e {
        den = den * BigInt::from(2);
    }
    Ok(acc / den)
}

/// `t^(1-d) prod_{j=1}^{d-1} (2j+1)/j`, for `d > 2`.
pub fn linear_factor_prob(d: u64, t: &BigRational) -> Result<BigRational> {
    if d <= 2 {
        return Err(Error::invalid("linear_factor_prob needs d > 2"));
    }
    check_t(t)?;
    let prod = (1..d).fold(BigRational::one(), |acc, j| {
        acc * rat(2 * j as i64 + 1, j as i64)
    });
    Ok(prod / num_traits::pow(t.clone(), (d - 1) as usize))
}

/// `(3/t)^(e(d-e))`.
pub fn split_prob_bound(d: u64, e: u64, t: &BigRational) -> Result<BigRational> {
    check_range(d, e)?;
    check_t(t)?;
    Ok(num_traits::pow(rat(3, 1) / t, (e * (d - e)) as usize))
}

/// `round((k-1) phi(N) / (12 2^r))`, halves rounded up.
pub fn model_dimension(k: u64, n: u64, r: u32) -> Result<u64> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::invalid(format!("weight {k} must be even and at least 2")));
    }
    match squarefree_factors(n) {
        Some(ps) if ps.len() == r as usize => {}
        _ => {
            return Err(Error::invalid(format!(
                "{n} is not squarefree with {r} prime factors"
            )))
        }
    }
    let num = (k - 1) * euler_phi(n);
    let den = 12u64 << r;
    Ok((2 * num + den) / (2 * den))
}

/// Exact rational approximation of `2^((k+1)/2)` with relative error below
/// `10^-15`.
pub fn model_t(k: u64) -> BigRational {
    if (k + 1) % 2 == 0 {
        return BigRational::from(BigInt::one() << ((k + 1) / 2));
    }
    let scale = num_traits::pow(BigInt::from(10), 15);
    let sqrt2 = (&scale * &scale * BigInt::from(2)).sqrt();
    BigRational::new((BigInt::one() << (k / 2)) * sqrt2, scale)
}

/// `P_{n, e}(t)` with `n` the model dimension and `t = 2^((k+1)/2)`.
pub fn predicted_orbit_profile(k: u64, n: u64, r: u32, e: u64) -> Result<BigRational> {
    let d = model_dimension(k, n, r)?;
    if d < 2 {
        return Err(Error::invalid(format!("model dimension {d} is below 2")));
    }
    split_prob_closed(d, e, &model_t(k))
}

/// Nearest double to a rational.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn t(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn poly_count_examples() {
        let x = t(7, 3);
        assert_eq!(r_poly_count(1, &x).unwrap(), &x * BigInt::from(2));
        assert_eq!(r_poly_count(2, &x).unwrap(), t(4, 3) * num_traits::pow(x.clone(), 3));
        assert_eq!(r_poly_count(3, &x).unwrap(), t(16, 45) * num_traits::pow(x.clone(), 6));
        assert!(r_poly_count(0, &x).is_err());
    }

    /// `2^d t^(d(d+1)/2) prod_{j=1}^{d-1} (j/(2j+1))^(d-j)`.
    #[test]
    fn poly_count_second_form() {
        for d in 1u64..=10 {
            for x in [t(3, 1), t(7, 2), t(5, 7)] {
                let mut alt = BigRational::from(BigInt::one() << d)
                    * num_traits::pow(x.clone(), (d * (d + 1) / 2) as usize);
                for j in 1..d {
                    alt *= num_traits::pow(t(j as i64, 2 * j as i64 + 1), (d - j) as usize);
                }
                assert_eq!(r_poly_count(d, &x).unwrap(), alt);
            }
        }
    }

    #[test]
    fn split_examples() {
        let x = t(9, 2);
        let x2 = &x * &x;
        assert_eq!(split_prob(3, 1, &x).unwrap(), t(15, 2) / &x2);
        assert_eq!(split_prob(4, 2, &x).unwrap(), t(175, 8) / (&x2 * &x2));
        assert_eq!(split_prob(2, 1, &x).unwrap(), t(3, 2) / &x);
        assert_eq!(linear_factor_prob(4, &x).unwrap(), t(35, 2) / (&x2 * &x));
        assert_eq!(linear_factor_prob(3, &x).unwrap() * &x2, t(15, 2));
        assert!(split_prob(4, 3, &x).is_err());
        assert!(linear_factor_prob(2, &x).is_err());
    }

    #[test]
    fn closed_form_and_linear_law() {
        for d in 2u64..=12 {
            for x in [t(3, 1), t(7, 2), t(4, 1), t(8, 1)] {
                for e in 1..=d / 2 {
                    assert_eq!(
                        split_prob(d, e, &x).unwrap(),
                        split_prob_closed(d, e, &x).unwrap()
                    );
                }
                if d > 2 {
                    assert_eq!(linear_factor_prob(d, &x).unwrap(), split_prob(d, 1, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(split_prob_bound(4, 2, &t(4, 1)).unwrap(), t(81, 256));
        assert!(split_prob(4, 2, &t(4, 1)).unwrap() < t(81, 256));
        assert_eq!(split_prob(4, 2, &t(4, 1)).unwrap(), t(175, 8) / BigInt::from(256));
        assert_eq!(split_prob_bound(6, 3, &t(3, 1)).unwrap(), t(1, 1));
    }

    #[test]
    fn bound_and_dominance() {
        for d in 2u64..=40 {
            for x in [t(7, 2), t(4, 1), t(8, 1)] {
                let mut rest = BigRational::zero();
                for e in 1..=d / 2 {
                    let p = split_prob(d, e, &x).unwrap();
                    assert!(p < split_prob_bound(d, e, &x).unwrap(), "d={d} e={e} t={x}");
                    if e >= 2 {
                        rest += p;
                    }
                }
                if d > 2 && x >= t(4, 1) {
                    assert!(linear_factor_prob(d, &x).unwrap() >= rest);
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(model_dimension(2, 1009, 1).unwrap(), 42);
        assert_eq!(model_dimension(4, 15, 2).unwrap(), 1);
        assert_eq!(model_dimension(2, 11, 1).unwrap(), 0);
        assert!(model_dimension(2, 12, 2).is_err());
        assert!(model_dimension(3, 11, 1).is_err());
        assert!(model_dimension(2, 15, 1).is_err());
    }

    #[test]
    fn model_parameter() {
        let x = model_t(2);
        let err = (to_f64(&x) - 2.0f64.powf(1.5)).abs();
        assert!(err < 1e-12);
        assert_eq!(model_t(3), t(4, 1));
        assert_eq!(
            predicted_orbit_profile(4, 101, 1, 1).unwrap(),
            linear_factor_prob(13, &model_t(4)).unwrap()
        );
        assert!(predicted_orbit_profile(2, 11, 1, 1).is_err());
    }

    #[test]
    fn profile_decreases_with_level() {
        let primes = crate::arith::modp::primes_up_to(400);
        for k in [4u64, 6] {
            let mut last: Option<(u64, BigRational)> = None;
            for &n in primes.iter().filter(|&&n| n > 20) {
                let d = model_dimension(k, n, 1).unwrap();
                let v = predicted_orbit_profile(k, n, 1, 1).unwrap();
                if let Some((d0, v0)) = &last {
                    if d > *d0 {
                        assert!(v < *v0, "k={k} N={n}");
                    }
                }
                last = Some((d, v));
            }
        }
    }
}
