//! Hecke data must not depend on the chosen presentation of the algebra.

use levelorbits::arith::modp::primes_up_to;
use levelorbits::brandt::{al_permutation, al_split_charpolys, brandt_matrix};
use levelorbits::orbits::{analyze_level, DEFAULT_P_BOUND};
use levelorbits::polyfactor::factor_over_integers;
use levelorbits::quaternion::{alternative_order, classes_of_order, two_sided_prime_ideal};

#[test]
fn alternative_presentation_gives_same_orbits() {
    for n in primes_up_to(99).into_iter().filter(|&n| n >= 5) {
        let cs = classes_of_order(alternative_order(n, 0).unwrap()).unwrap();
        let w = al_permutation(&cs, &two_sided_prime_ideal(cs.order()).unwrap()).unwrap();
        let rep = analyze_level(n, DEFAULT_P_BOUND).unwrap();
        let p = rep.min_p.unwrap();
        let (plus, minus) = al_split_charpolys(&brandt_matrix(&cs, p).unwrap(), &w).unwrap();
        let plus_sizes = factor_over_integers(&plus).unwrap().degrees();
        let minus_sizes = factor_over_integers(&minus).unwrap().degrees();
        assert_eq!(plus_sizes, rep.orbit_sizes_plus, "N={n}");
        assert_eq!(minus_sizes, rep.orbit_sizes_minus, "N={n}");
    }
}
