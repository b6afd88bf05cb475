//! Integral left ideals of a maximal order.

use num_rational::BigRational;

use super::order::{
    conj_basis, hnf4, hnf_contains, hnf_index, lattice_product, scaled_gram, Basis4, Elem,
    MaximalOrder,
};
use crate::arith::lattice::{count_value, lll, shortest_vector, theta_series, GramForm};
use crate::arith::modp::inv_mod;
use crate::error::{Error, Result};

/// An integral left ideal, stored as a Hermite basis in order coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftIdeal {
    basis: Basis4,
    norm: u64,
}

fn isqrt_exact(n: i128) -> Option<u64> {
    let r = crate::arith::lattice::isqrt_i128(n);
    (r * r == n).then_some(r as u64)
}

impl LeftIdeal {
    /// The order itself.
    pub fn unit(_ord: &MaximalOrder) -> Self {
        let mut basis = [[0i64; 4]; 4];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = 1;
        }
        LeftIdeal { basis, norm: 1 }
    }

    /// The lattice spanned by `gens`, assumed to be an integral left ideal.
    /// The norm is read off the index `[O : I] = nrd(I)^2`.
    pub fn from_generators(gens: &[Elem]) -> Result<Self> {
        let basis = hnf4(gens)?;
        let norm = isqrt_exact(hnf_index(&basis))
            .ok_or_else(|| Error::internal("ideal index is not a square"))?;
        Ok(LeftIdeal { basis, norm })
    }

    pub fn basis(&self) -> &Basis4 {
        &self.basis
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Basis vectors over `{1, i, j, k}`.
    pub fn standard_basis(&self, ord: &MaximalOrder) -> Vec<[BigRational; 4]> {
        self.basis.iter().map(|x| ord.to_standard(x)).collect()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        hnf_contains(&self.basis, x)
    }

    /// Norm form `nrd(x) / nrd(I)`.
    pub fn norm_form(&self, ord: &MaximalOrder) -> Result<GramForm> {
        scaled_gram(ord, &self.basis, self.norm as i128)
    }

    /// `O x ⊆ I` for every basis element of `O`.
    pub fn is_left_ideal(&self, ord: &MaximalOrder) -> Result<bool> {
        for a in 0..4 {
            let mut e = [0i64; 4];
            e[a] = 1;
            for x in &self.basis {
                if !self.contains(&ord.mul(&e, x)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `I x` for `x` in the order.
    pub fn right_mul(&self, ord: &MaximalOrder, x: &Elem) -> Result<Self> {
        let gens: Vec<Elem> = self
            .basis
            .iter()
            .map(|b| ord.mul(b, x))
            .collect::<Result<_>>()?;
        let basis = hnf4(&gens)?;
        let n = ord.nrd(x) as u64 * self.norm;
        Ok(LeftIdeal { basis, norm: n })
    }

    /// `J I` for `J` two-sided for the order.
    pub fn left_mul(&self, ord: &MaximalOrder, j: &LeftIdeal) -> Result<Self> {
        Ok(LeftIdeal {
            basis: lattice_product(ord, &j.basis, &self.basis)?,
            norm: self.norm * j.norm,
        })
    }
}

/// Reduced norm form `nrd(x) / (nrd(I) nrd(J))` on `conj(J) I`.
pub fn pair_form(ord: &MaximalOrder, i: &LeftIdeal, j: &LeftIdeal) -> Result<GramForm> {
    let lat = lattice_product(ord, &conj_basis(ord, &j.basis), &i.basis)?;
    let g = scaled_gram(ord, &lat, i.norm as i128 * j.norm as i128)?;
    Ok(lll(&g)?.gram)
}

/// `I ~ J` iff `conj(J) I` has an element of normalized norm 1.
pub fn ideal_equivalent(ord: &MaximalOrder, i: &LeftIdeal, j: &LeftIdeal) -> Result<bool> {
    Ok(count_value(&pair_form(ord, i, j)?, 1) > 0)
}

/// Order of the unit group of the right order of `I`.
pub fn unit_weight(ord: &MaximalOrder, i: &LeftIdeal) -> Result<u32> {
    Ok(count_value(&pair_form(ord, i, i)?, 1) as u32)
}

/// An equivalent ideal of small norm: `I conj(a) / nrd(I)` for a shortest
/// `a` in `I`.
pub fn normalize(ord: &MaximalOrder, i: &LeftIdeal) -> Result<LeftIdeal> {
    if i.norm == 1 {
        return Ok(i.clone());
    }
    let red = lll(&i.norm_form(ord)?)?;
    let (v, min) = shortest_vector(&red.gram);
    // coordinates in the ideal basis, then in the order
    let mut c = [0i64; 4];
    for (k, &vk) in v.iter().enumerate() {
        for (l, cl) in c.iter_mut().enumerate() {
            *cl += vk * red.transform[k * 4 + l];
        }
    }
    let mut alpha = [0i128; 4];
    for (l, &cl) in c.iter().enumerate() {
        for (a, al) in alpha.iter_mut().enumerate() {
            *al += cl as i128 * i.basis[l][a] as i128;
        }
    }
    let alpha = super::order::narrow(alpha)?;
    let ca = ord.conj(&alpha);
    let n = i.norm as i64;
    let mut gens = Vec::with_capacity(4);
    for b in &i.basis {
        let p = ord.mul(b, &ca)?;
        if p.iter().any(|x| x % n != 0) {
            return Err(Error::internal("normalization is not integral"));
        }
        gens.push(p.map(|x| x / n));
    }
    let out = LeftIdeal::from_generators(&gens)?;
    if out.norm as i128 != min {
        return Err(Error::internal("normalized ideal has unexpected norm"));
    }
    Ok(out)
}

/// Invariant of the ideal class: representation numbers of the normalized
/// norm form up to `bound`.
pub fn class_signature(ord: &MaximalOrder, i: &LeftIdeal, bound: u64) -> Result<Vec<u64>> {
    let red = lll(&i.norm_form(ord)?)?;
    Ok(theta_series(&red.gram, bound))
}

/// An element `e` of the order whose reduction mod `p` is a rank-one
/// idempotent of `O / pO ≅ M_2(F_p)`.
fn idempotent_mod(ord: &MaximalOrder, p: u64) -> Result<Elem> {
    let pi = p as i128;
    let r = 3i64;
    for s in 1..=4 * r {
        // deterministic scan of boxes of growing sup-norm
        for a in -s..=s {
            for b in -s..=s {
                for c in -s..=s {
                    for d in -s..=s {
                        let x = [a, b, c, d];
                        if x.iter().map(|v| v.abs()).max() != Some(s) {
                            continue;
                        }
                        let t = (ord.trd(&x) as i128).rem_euclid(pi);
                        if t != 0 && ord.nrd(&x).rem_euclid(pi) == 0 {
                            let tinv = inv_mod(t as u64, p) as i64;
                            return Ok(x.map(|v| (v * tinv).rem_euclid(p as i64)));
                        }
                    }
                }
            }
        }
    }
    Err(Error::internal(format!("no idempotent mod {p}")))
}

/// Coordinates of `x` (in the order basis) with respect to the Hermite basis
/// `h`, if `x` lies in the lattice.
fn solve_in(h: &Basis4, x: &Elem) -> Option<[i64; 4]> {
    let mut r = x.map(|v| v as i128);
    let mut c = [0i64; 4];
    for i in 0..4 {
        let d = h[i][i] as i128;
        if r[i] % d != 0 {
            return None;
        }
        let q = r[i] / d;
        c[i] = q as i64;
        for j in i..4 {
            r[j] -= q * h[i][j] as i128;
        }
    }
    r.iter().all(|&v| v == 0).then_some(c)
}

/// The `p + 1` left ideals `J ⊂ I` with `I / J ≅ (Z/p)^2`, i.e. of norm
/// `p nrd(I)`.
pub fn neighbors(ord: &MaximalOrder, i: &LeftIdeal, p: u64) -> Result<Vec<LeftIdeal>> {
    let eps = idempotent_mod(ord, p)?;
    let pm = p as i64;
    // Left multiplication by eps on I / pI, in I-coordinates.
    let mut images: Vec<[i64; 4]> = Vec::with_capacity(4);
    for b in &i.basis {
        let y = ord.mul(&eps, b)?;
        let c = solve_in(&i.basis, &y).ok_or_else(|| Error::internal("I is not a left ideal"))?;
        images.push(c.map(|v| v.rem_euclid(pm)));
    }
    let span = row_basis_mod(&images, p);
    if span.len() != 2 {
        return Err(Error::internal(format!(
            "eps I / pI has dimension {} mod {p}",
            span.len()
        )));
    }
    let mut lines: Vec<[i64; 4]> = vec![span[0]];
    for t in 0..pm {
        lines.push([0, 1, 2, 3].map(|k| (span[1][k] + t * span[0][k]).rem_euclid(pm)));
    }
    let mut out = Vec::with_capacity(lines.len());
    for m in lines {
        let mut mo = [0i128; 4];
        for (l, &ml) in m.iter().enumerate() {
            for a in 0..4 {
                mo[a] += ml as i128 * i.basis[l][a] as i128;
            }
        }
        let mo = super::order::narrow(mo)?;
        let mut gens = Vec::with_capacity(8);
        for a in 0..4 {
            let mut e = [0i64; 4];
            e[a] = 1;
            gens.push(ord.mul(&e, &mo)?);
        }
        for b in &i.basis {
            gens.push(b.map(|v| v * pm));
        }
        let j = LeftIdeal::from_generators(&gens)?;
        if j.norm != i.norm * p {
            return Err(Error::internal("neighbor has the wrong norm"));
        }
        out.push(j);
    }
    Ok(out)
}

/// Echelon basis of the F_p span of the rows.
fn row_basis_mod(rows: &[[i64; 4]], p: u64) -> Vec<[i64; 4]> {
    let pm = p as i64;
    let mut a: Vec<[i64; 4]> = rows.to_vec();
    let mut out = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..a.len()).find(|&k| a[k][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][col] as u64, p) as i64;
        a[r] = a[r].map(|v| v * inv % pm);
        for k in 0..a.len() {
            if k != r && a[k][col] != 0 {
                let f = a[k][col];
                let pr = a[r];
                for j in 0..4 {
                    a[k][j] = (a[k][j] - f * pr[j]).rem_euclid(pm);
                }
            }
        }
        out.push(a[r]);
        r += 1;
    }
    out
}

/// The two-sided ideal `P` above `N`: `{x : trd(x conj(y)) = 0 mod N for all
/// y in O} + N O`, i.e. the preimage of the radical of the trace form.
pub fn two_sided_prime_ideal(ord: &MaximalOrder) -> Result<LeftIdeal> {
    let n = ord.level();
    let nm = n as i64;
    let g = ord.gram();
    let rows: Vec<[i64; 4]> = (0..4).map(|a| g[a].map(|v| v.rem_euclid(nm))).collect();
    let kernel = kernel_mod(&rows, n);
    if kernel.len() != 2 {
        return Err(Error::internal(format!(
            "trace form radical has dimension {} mod {n}",
            kernel.len()
        )));
    }
    let mut gens: Vec<Elem> = kernel;
    for a in 0..4 {
        let mut e = [0i64; 4];
        e[a] = nm;
        gens.push(e);
    }
    let p = LeftIdeal::from_generators(&gens)?;
    if p.norm != n {
        return Err(Error::internal("two-sided prime has the wrong norm"));
    }
    Ok(p)
}

/// Null space mod `p` of a symmetric 4x4 matrix.
fn kernel_mod(rows: &[[i64; 4]], p: u64) -> Vec<[i64; 4]> {
    let pm = p as i64;
    let mut a: Vec<[i64; 4]> = rows.to_vec();
    let mut pivcols = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..4).find(|&k| a[k][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][col] as u64, p) as i64;
        a[r] = a[r].map(|v| (v as i128 * inv as i128).rem_euclid(pm as i128) as i64);
        for k in 0..4 {
            if k != r && a[k][col] != 0 {
                let f = a[k][col] as i128;
                let pr = a[r];
                for j in 0..4 {
                    a[k][j] = (a[k][j] as i128 - f * pr[j] as i128).rem_euclid(pm as i128) as i64;
                }
            }
        }
        pivcols.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..4).filter(|c| !pivcols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = [0i64; 4];
            v[f] = 1;
            for (row, &pc) in pivcols.iter().enumerate() {
                v[pc] = (-a[row][f]).rem_euclid(pm);
            }
            v
        })
        .collect()
}
