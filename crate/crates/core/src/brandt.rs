//! Brandt matrices, Eisenstein deflation and the Atkin-Lehner split.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::lattice::count_value;
use crate::arith::matrix::{charpoly, kernel_basis, restrict_operator, IntMatrix};
use crate::arith::modp::is_prime;
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::quaternion::ideal::LeftIdeal;
use crate::quaternion::ClassSet;

/// `T_p` on the free module over the class set, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandtMatrix {
    pub level: u64,
    pub p: u64,
    dim: usize,
    entries: Vec<i64>,
}

impl BrandtMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.dim, self.dim, |i, j| BigInt::from(self.get(i, j)))
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.iter().sum()).collect()
    }
}

/// The involution of the class set induced by `I -> P I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlPermutation {
    perm: Vec<usize>,
}

impl AlPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if perm.iter().any(|&j| j >= n) || (0..n).any(|i| perm[perm[i]] != i) {
            return Err(Error::internal("Atkin-Lehner permutation is not an involution"));
        }
        Ok(AlPermutation { perm })
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn fixed_points(&self) -> usize {
        (0..self.perm.len()).filter(|&i| self.perm[i] == i).count()
    }

    /// Permutation matrix `W` with `W e_j = e_{w(j)}`.
    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.perm.len();
        IntMatrix::from_fn(n, n, |i, j| BigInt::from((self.perm[j] == i) as i64))
    }
}

/// `B[i][j] = #{x in conj(I_j) I_i : nrd(x) = p nrd(I_i) nrd(I_j)} / u_j`.
pub fn brandt_matrix(cs: &ClassSet, p: u64) -> Result<BrandtMatrix> {
    let n = cs.level();
    if p == n {
        return Err(Error::invalid(format!("Hecke prime {p} divides the level")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let h = cs.len();
    let w = cs.weights();
    let mut entries = vec![0i64; h * h];
    for i in 0..h {
        for j in i..h {
            let c = count_value(cs.pair_form(i, j)?, p) as i64;
            for (a, b) in [(i, j), (j, i)] {
                let u = w[b] as i64;
                if c % u != 0 {
                    return Err(Error::internal(format!(
                        "representation count {c} not divisible by unit weight {u}"
                    )));
                }
                entries[a * h + b] = c / u;
            }
        }
    }
    let b = BrandtMatrix {
        level: n,
        p,
        dim: h,
        entries,
    };
    if b.row_sums().iter().any(|&s| s != p as i64 + 1) {
        return Err(Error::internal(format!("row sums of T_{p} differ from {}", p + 1)));
    }
    Ok(b)
}

/// Class of `P I_i` for each representative `I_i`.
pub fn al_permutation(cs: &ClassSet, two_sided: &LeftIdeal) -> Result<AlPermutation> {
    let perm = cs
        .reps()
        .iter()
        .map(|r| cs.class_of(&r.left_mul(cs.order(), two_sided)?))
        .collect::<Result<Vec<_>>>()?;
    AlPermutation::new(perm)
}

/// Characteristic polynomial of `B` with the Eisenstein root `p + 1` removed.
pub fn cuspidal_charpoly(b: &BrandtMatrix) -> Result<IntPolynomial> {
    deflate_eisenstein(&charpoly(&b.to_matrix())?, b.p)
}

fn deflate_eisenstein(f: &IntPolynomial, p: u64) -> Result<IntPolynomial> {
    let (q, r) = f.deflate(&BigInt::from(p + 1));
    if r != BigInt::from(0) {
        return Err(Error::internal(format!("{} is not an eigenvalue of T_{p}", p + 1)));
    }
    Ok(q)
}

/// Charpolys of `B` on the `w`-fixed and `w`-negated sublattices; the
/// Eisenstein factor is removed from the fixed side.
pub fn al_split_charpolys(
    b: &BrandtMatrix,
    w: &AlPermutation,
) -> Result<(IntPolynomial, IntPolynomial)> {
    if w.as_slice().len() != b.dim() {
        return Err(Error::invalid("permutation and matrix sizes differ"));
    }
    let t = b.to_matrix();
    let wm = w.to_matrix();
    let id = IntMatrix::identity(b.dim());
    let side = |m: IntMatrix| -> Result<IntPolynomial> {
        let basis = kernel_basis(&m);
        if basis.is_empty() {
            return Ok(IntPolynomial::one());
        }
        charpoly(&restrict_operator(&t, &basis)?)
    };
    let plus = deflate_eisenstein(&side(wm.sub(&id))?, b.p)?;
    let minus = side(wm.add(&id))?;
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modp::primes_up_to;
    use crate::quaternion::ideal::neighbors;
    use crate::quaternion::{left_ideal_classes, two_sided_prime_ideal};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn examples() {
        let cs = left_ideal_classes(11).unwrap();
        let b = brandt_matrix(&cs, 2).unwrap();
        assert_eq!(charpoly(&b.to_matrix()).unwrap(), &poly(&[-3, 1]) * &poly(&[2, 1]));
        assert_eq!(cuspidal_charpoly(&b).unwrap(), poly(&[2, 1]));
        let w = al_permutation(&cs, &two_sided_prime_ideal(cs.order()).unwrap()).unwrap();
        let (plus, minus) = al_split_charpolys(&b, &w).unwrap();
        assert_eq!(plus, poly(&[2, 1]));
        assert_eq!(minus, IntPolynomial::one());
        assert!(matches!(brandt_matrix(&cs, 11), Err(Error::InvalidInput(_))));

        let cs = left_ideal_classes(13).unwrap();
        let b = brandt_matrix(&cs, 2).unwrap();
        assert_eq!(b.entries(), &[3]);
        assert_eq!(cuspidal_charpoly(&b).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn level_251_split() {
        let cs = left_ideal_classes(251).unwrap();
        let b = brandt_matrix(&cs, 2).unwrap();
        let w = al_permutation(&cs, &two_sided_prime_ideal(cs.order()).unwrap()).unwrap();
        let (plus, minus) = al_split_charpolys(&b, &w).unwrap();
        assert_eq!((plus.deg(), minus.deg()), (17, 4));
        assert_eq!(&plus * &minus, cuspidal_charpoly(&b).unwrap());
    }

    /// The neighbor walk gives `T_p` directly: entry `(i, j)` counts the
    /// `p`-neighbors of `I_i` in class `j`.
    #[test]
    fn agrees_with_neighbor_counts() {
        for n in [11u64, 37, 43, 67, 101, 163] {
            let cs = left_ideal_classes(n).unwrap();
            for p in [2u64, 3, 5] {
                let b = brandt_matrix(&cs, p).unwrap();
                let h = cs.len();
                let mut m = vec![0i64; h * h];
                for (i, r) in cs.reps().iter().enumerate() {
                    for nb in neighbors(cs.order(), r, p).unwrap() {
                        m[i * h + cs.class_of(&nb).unwrap()] += 1;
                    }
                }
                assert_eq!(b.entries(), &m[..], "N = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn commuting_family() {
        for n in primes_up_to(200).into_iter().skip(2) {
            let cs = left_ideal_classes(n).unwrap();
            let t2 = brandt_matrix(&cs, 2).unwrap().to_matrix();
            let t3 = brandt_matrix(&cs, 3).unwrap().to_matrix();
            assert_eq!(t2.mul(&t3), t3.mul(&t2), "N = {n}");
            let w = al_permutation(&cs, &two_sided_prime_ideal(cs.order()).unwrap())
                .unwrap()
                .to_matrix();
            assert_eq!(w.mul(&t2), t2.mul(&w), "N = {n}");
        }
    }
}
