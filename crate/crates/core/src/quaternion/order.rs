//! Maximal orders, element arithmetic in order coordinates, and rank-4
//! integer lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::algebra::{auxiliary_presentations, AlgebraPresentation};
use crate::arith::lattice::GramForm;
use crate::arith::matrix::hnf;
use crate::arith::modp::is_prime;
use crate::error::{Error, Result};

/// Element of an order, in coordinates over the order's basis.
pub type Elem = [i64; 4];
/// Four row vectors in order coordinates.
pub type Basis4 = [[i64; 4]; 4];

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Product in the standard basis `{1, i, j, k}` of `(a, b)`.
fn std_mul(a: i64, b: i64, x: &[Q; 4], y: &[Q; 4]) -> [Q; 4] {
    let (qa, qb) = (Q::from(BigInt::from(a)), Q::from(BigInt::from(b)));
    let qab = &qa * &qb;
    [
        &x[0] * &y[0] + &qa * &x[1] * &y[1] + &qb * &x[2] * &y[2] - &qab * &x[3] * &y[3],
        &x[0] * &y[1] + &x[1] * &y[0] - &qb * &x[2] * &y[3] + &qb * &x[3] * &y[2],
        &x[0] * &y[2] + &x[2] * &y[0] + &qa * &x[1] * &y[3] - &qa * &x[3] * &y[1],
        &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] - &x[2] * &y[1],
    ]
}

fn std_conj(x: &[Q; 4]) -> [Q; 4] {
    [x[0].clone(), -&x[1], -&x[2], -&x[3]]
}

/// Inverse of a 4x4 rational matrix by Gauss-Jordan.
fn inverse4(m: &[[Q; 4]; 4]) -> Option<[[Q; 4]; 4]> {
    let mut a: Vec<Vec<Q>> = (0..4)
        .map(|i| {
            let mut r = m[i].to_vec();
            r.extend((0..4).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..4 {
        let p = (c..4).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..4 {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut out: [[Q; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][4 + j].clone();
        }
    }
    Some(out)
}

fn to_coords(v: &[Q; 4], inv: &[[Q; 4]; 4]) -> Option<Elem> {
    let mut out = [0i64; 4];
    for (j, o) in out.iter_mut().enumerate() {
        let s: Q = (0..4).map(|i| &v[i] * &inv[i][j]).sum();
        if !s.is_integer() {
            return None;
        }
        *o = s.to_integer().to_i64()?;
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct MaximalOrder {
    alg: AlgebraPresentation,
    basis: [[Q; 4]; 4],
    mult: [[[i64; 4]; 4]; 4],
    gram: [[i64; 4]; 4],
    one: Elem,
    trd: [i64; 4],
}

impl MaximalOrder {
    /// Verify a candidate basis: closure, unit, integrality of the trace
    /// form and reduced discriminant `N`.
    fn from_candidate(alg: AlgebraPresentation, basis: [[Q; 4]; 4]) -> Option<Self> {
        let inv = inverse4(&basis)?;
        let mut mult = [[[0i64; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let prod = std_mul(alg.a, alg.b, &basis[a], &basis[b]);
                mult[a][b] = to_coords(&prod, &inv)?;
            }
        }
        let one = to_coords(&[Q::one(), Q::zero(), Q::zero(), Q::zero()], &inv)?;
        let mut gram = [[0i64; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let t = std_mul(alg.a, alg.b, &basis[a], &std_conj(&basis[b]))[0].clone() * q(2, 1);
                if !t.is_integer() {
                    return None;
                }
                gram[a][b] = t.to_integer().to_i64()?;
            }
        }
        let trd = [0, 1, 2, 3].map(|a| (&basis[a][0] * q(2, 1)).to_integer().to_i64().unwrap());
        let ord = MaximalOrder {
            alg,
            basis,
            mult,
            gram,
            one,
            trd,
        };
        let n = alg.level as i128;
        (ord.gram_form().ok()?.det() == BigInt::from(n * n)).then_some(ord)
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    pub fn level(&self) -> u64 {
        self.alg.level
    }

    /// Basis vectors in the standard basis `{1, i, j, k}`.
    pub fn standard_basis(&self) -> &[[BigRational; 4]; 4] {
        &self.basis
    }

    /// Doubled Gram matrix `trd(e_a conj(e_b))` of the reduced norm.
    pub fn gram(&self) -> &[[i64; 4]; 4] {
        &self.gram
    }

    pub fn gram_form(&self) -> Result<GramForm> {
        GramForm::from_doubled(
            4,
            self.gram.iter().flatten().map(|&x| x as i128).collect(),
        )
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// Structure constants: `e_a e_b = sum_c mult[a][b][c] e_c`.
    pub fn structure_constants(&self) -> &[[[i64; 4]; 4]; 4] {
        &self.mult
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let mut acc = [0i128; 4];
        for a in 0..4 {
            if x[a] == 0 {
                continue;
            }
            for b in 0..4 {
                if y[b] == 0 {
                    continue;
                }
                let xy = x[a] as i128 * y[b] as i128;
                let m = &self.mult[a][b];
                for c in 0..4 {
                    if m[c] != 0 {
                        acc[c] = xy
                            .checked_mul(m[c] as i128)
                            .and_then(|t| acc[c].checked_add(t))
                            .ok_or(Error::Overflow("quaternion product"))?;
                    }
                }
            }
        }
        narrow(acc)
    }

    pub fn trd(&self, x: &Elem) -> i64 {
        (0..4).map(|a| x[a] * self.trd[a]).sum()
    }

    pub fn conj(&self, x: &Elem) -> Elem {
        let t = self.trd(x);
        [0, 1, 2, 3].map(|c| t * self.one[c] - x[c])
    }

    /// Reduced norm.
    pub fn nrd(&self, x: &Elem) -> i128 {
        let mut s = 0i128;
        for a in 0..4 {
            for b in 0..4 {
                s += x[a] as i128 * self.gram[a][b] as i128 * x[b] as i128;
            }
        }
        s / 2
    }

    /// Coordinates of an element of the algebra given in the standard basis,
    /// if it lies in the order.
    pub fn coords_of(&self, v: &[BigRational; 4]) -> Option<Elem> {
        to_coords(v, &inverse4(&self.basis)?)
    }

    pub fn to_standard(&self, x: &Elem) -> [BigRational; 4] {
        let mut out: [Q; 4] = Default::default();
        for (c, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|a| &self.basis[a][c] * q(x[a], 1)).sum();
        }
        out
    }
}

pub(crate) fn narrow(v: [i128; 4]) -> Result<Elem> {
    let mut out = [0i64; 4];
    for (o, x) in out.iter_mut().zip(v) {
        *o = i64::try_from(x).map_err(|_| Error::Overflow("order coordinates"))?;
    }
    Ok(out)
}

fn std_elem(c: [(i64, i64); 4]) -> [Q; 4] {
    c.map(|(n, d)| q(n, d))
}

/// Candidate bases for `(-q, -N)`, indexed by `c` with `q | c^2 N + 1`.
fn aux_candidates(alg: &AlgebraPresentation) -> Vec<[[Q; 4]; 4]> {
    let qq = -alg.a;
    let n = -alg.b;
    (0..qq)
        .filter(|&c| (c * c * n + 1) % qq == 0)
        .map(|c| {
            [
                std_elem([(1, 2), (1, 2), (0, 1), (0, 1)]),
                std_elem([(0, 1), (0, 1), (1, 2), (-1, 2)]),
                std_elem([(0, 1), (1, qq), (0, 1), (-c, qq)]),
                std_elem([(0, 1), (0, 1), (0, 1), (1, 1)]),
            ]
        })
        .collect()
}

fn candidates(alg: &AlgebraPresentation) -> Vec<[[Q; 4]; 4]> {
    let n = alg.level;
    match (alg.a, n) {
        (-1, 2) => vec![[
            std_elem([(1, 1), (0, 1), (0, 1), (0, 1)]),
            std_elem([(0, 1), (1, 1), (0, 1), (0, 1)]),
            std_elem([(0, 1), (0, 1), (1, 1), (0, 1)]),
            std_elem([(1, 2), (1, 2), (1, 2), (1, 2)]),
        ]],
        (-1, _) if n % 4 == 3 => vec![
            [
                std_elem([(1, 1), (0, 1), (0, 1), (0, 1)]),
                std_elem([(0, 1), (1, 1), (0, 1), (0, 1)]),
                std_elem([(0, 1), (1, 2), (1, 2), (0, 1)]),
                std_elem([(1, 2), (0, 1), (0, 1), (1, 2)]),
            ],
            [
                std_elem([(1, 1), (0, 1), (0, 1), (0, 1)]),
                std_elem([(0, 1), (1, 1), (0, 1), (0, 1)]),
                std_elem([(1, 2), (0, 1), (1, 2), (0, 1)]),
                std_elem([(0, 1), (1, 2), (0, 1), (1, 2)]),
            ],
        ],
        (-2, _) if n % 8 == 5 => vec![[
            std_elem([(1, 2), (0, 1), (1, 2), (1, 2)]),
            std_elem([(0, 1), (1, 4), (1, 2), (1, 4)]),
            std_elem([(0, 1), (0, 1), (1, 1), (0, 1)]),
            std_elem([(0, 1), (0, 1), (0, 1), (1, 1)]),
        ]],
        _ => aux_candidates(alg),
    }
}

/// A maximal order of the given presentation, verified to have reduced
/// discriminant `N`.
pub fn maximal_order(alg: &AlgebraPresentation) -> Result<MaximalOrder> {
    if !is_prime(alg.level) || !alg.is_valid() {
        return Err(Error::invalid("presentation is not ramified exactly at {N, inf}"));
    }
    candidates(alg)
        .into_iter()
        .find_map(|b| MaximalOrder::from_candidate(*alg, b))
        .ok_or_else(|| {
            Error::internal(format!(
                "no verified maximal order for ({}, {})",
                alg.a, alg.b
            ))
        })
}

/// A maximal order in a presentation different from the default one, built
/// from the `skip`-th auxiliary prime that admits a verified order.
pub fn alternative_order(n: u64, skip: usize) -> Result<MaximalOrder> {
    let default = super::algebra::algebra_for_level(n)?;
    auxiliary_presentations(n)
        .filter(|alg| *alg != default)
        .take(64)
        .filter_map(|alg| maximal_order(&alg).ok())
        .nth(skip)
        .ok_or_else(|| Error::internal(format!("no alternative order for N = {n}")))
}

/// Hermite normal form of a full-rank sublattice of `Z^4` spanned by `gens`.
pub fn hnf4(gens: &[Elem]) -> Result<Basis4> {
    if let Some(b) = hnf4_small(gens) {
        return Ok(b);
    }
    let big: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let h = hnf(&big);
    if h.len() != 4 {
        return Err(Error::internal("lattice is not of full rank"));
    }
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = h[i][j].to_i64().ok_or(Error::Overflow("lattice basis"))?;
        }
    }
    Ok(out)
}

fn hnf4_small(gens: &[Elem]) -> Option<Basis4> {
    let mut rows: Vec<[i128; 4]> = gens
        .iter()
        .map(|g| g.map(|x| x as i128))
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    for col in 0..4 {
        if col >= rows.len() {
            return None;
        }
        loop {
            let piv = (col..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].unsigned_abs())?;
            rows.swap(col, piv);
            let p = rows[col];
            let mut done = true;
            for r in rows.iter_mut().skip(col + 1) {
                if r[col] != 0 {
                    let qt = r[col] / p[col];
                    for j in col..4 {
                        r[j] = r[j].checked_sub(qt.checked_mul(p[j])?)?;
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[col][col] < 0 {
            for x in rows[col].iter_mut() {
                *x = -*x;
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    rows.truncate(4);
    for i in 0..4 {
        for k in 0..i {
            let qt = rows[k][i].div_euclid(rows[i][i]);
            if qt != 0 {
                for j in i..4 {
                    rows[k][j] = rows[k][j].checked_sub(qt.checked_mul(rows[i][j])?)?;
                }
            }
        }
    }
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = i64::try_from(rows[i][j]).ok()?;
        }
    }
    Some(out)
}

/// Index `[Z^4 : L]` of a lattice in Hermite form.
pub fn hnf_index(h: &Basis4) -> i128 {
    (0..4).map(|i| h[i][i] as i128).product()
}

/// Membership test against a Hermite basis.
pub fn hnf_contains(h: &Basis4, v: &Elem) -> bool {
    let mut r = v.map(|x| x as i128);
    for i in 0..4 {
        let d = h[i][i] as i128;
        if r[i] % d != 0 {
            return false;
        }
        let qt = r[i] / d;
        for j in i..4 {
            r[j] -= qt * h[i][j] as i128;
        }
    }
    r.iter().all(|&x| x == 0)
}

/// `{x y : x in A, y in B}` as a lattice.
pub fn lattice_product(ord: &MaximalOrder, a: &Basis4, b: &Basis4) -> Result<Basis4> {
    let mut gens = Vec::with_capacity(16);
    for x in a {
        for y in b {
            gens.push(ord.mul(x, y)?);
        }
    }
    hnf4(&gens)
}

/// Conjugates of the rows.
pub fn conj_basis(ord: &MaximalOrder, a: &Basis4) -> Basis4 {
    a.map(|x| ord.conj(&x))
}

/// Doubled Gram matrix of the reduced norm on the rows of `b`, divided by
/// `scale`.
pub fn scaled_gram(ord: &MaximalOrder, b: &Basis4, scale: i128) -> Result<GramForm> {
    let g = ord.gram();
    let mut e = vec![0i128; 16];
    for i in 0..4 {
        for j in i..4 {
            let mut s = 0i128;
            for a in 0..4 {
                if b[i][a] == 0 {
                    continue;
                }
                let mut t = 0i128;
                for c in 0..4 {
                    t += g[a][c] as i128 * b[j][c] as i128;
                }
                s = t
                    .checked_mul(b[i][a] as i128)
                    .and_then(|u| s.checked_add(u))
                    .ok_or(Error::Overflow("norm form"))?;
            }
            if s % scale != 0 {
                return Err(Error::internal("norm form is not divisible by the ideal norm"));
            }
            e[i * 4 + j] = s / scale;
            e[j * 4 + i] = s / scale;
        }
    }
    GramForm::from_doubled(4, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modp::primes_up_to;
    use crate::quaternion::algebra::algebra_for_level;

    fn check_order(ord: &MaximalOrder) {
        // closure is built into the structure constants; check associativity
        // and that 1 acts as identity.
        let one = ord.one();
        for a in 0..4 {
            let mut e = [0i64; 4];
            e[a] = 1;
            assert_eq!(ord.mul(&one, &e).unwrap(), e);
            assert_eq!(ord.mul(&e, &one).unwrap(), e);
            for b in 0..4 {
                let mut f = [0i64; 4];
                f[b] = 1;
                for c in 0..4 {
                    let mut g = [0i64; 4];
                    g[c] = 1;
                    let l = ord.mul(&ord.mul(&e, &f).unwrap(), &g).unwrap();
                    let r = ord.mul(&e, &ord.mul(&f, &g).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
            // x conj(x) = nrd(x)
            let n = ord.nrd(&e);
            let prod = ord.mul(&e, &ord.conj(&e)).unwrap();
            assert_eq!(prod, one.map(|c| c * n as i64));
        }
        let n = ord.level() as i128;
        assert_eq!(ord.gram_form().unwrap().det(), BigInt::from(n * n));
    }

    #[test]
    fn reference_bases() {
        let ord = maximal_order(&algebra_for_level(3).unwrap()).unwrap();
        let want = [
            std_elem([(1, 1), (0, 1), (0, 1), (0, 1)]),
            std_elem([(0, 1), (1, 1), (0, 1), (0, 1)]),
            std_elem([(0, 1), (1, 2), (1, 2), (0, 1)]),
            std_elem([(1, 2), (0, 1), (0, 1), (1, 2)]),
        ];
        assert_eq!(ord.standard_basis(), &want);
        let ord2 = maximal_order(&algebra_for_level(2).unwrap()).unwrap();
        assert_eq!(ord2.standard_basis()[3], std_elem([(1, 2), (1, 2), (1, 2), (1, 2)]));
        check_order(&ord);
        check_order(&ord2);
    }

    #[test]
    fn orders_for_all_levels() {
        for n in primes_up_to(2500) {
            let ord = maximal_order(&algebra_for_level(n).unwrap()).unwrap();
            check_order(&ord);
        }
    }

    #[test]
    fn alternative_orders_exist() {
        for n in primes_up_to(100).into_iter().skip(1) {
            let alt = alternative_order(n, 0).unwrap();
            assert_ne!(alt.algebra(), &algebra_for_level(n).unwrap());
            check_order(&alt);
        }
    }

    #[test]
    fn hnf_membership() {
        let h = hnf4(&[[2, 0, 0, 0], [0, 3, 0, 0], [1, 1, 1, 0], [0, 0, 0, 5], [4, 8, 2, 10]]).unwrap();
        assert_eq!(hnf_index(&h), 2 * 3 * 5);
        assert!(hnf_contains(&h, &[1, 1, 1, 0]));
        assert!(!hnf_contains(&h, &[1, 0, 0, 0]));
    }
}
