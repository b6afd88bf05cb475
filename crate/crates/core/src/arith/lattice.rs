//! Positive definite integral quadratic forms: exact LLL reduction and
//! Fincke-Pohst enumeration without floating point.
//!
//! All arithmetic is first attempted in checked `i128`; on overflow the same
//! routine is rerun over `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Doubled Gram matrix `G` of an integral quadratic form `q(v) = v^T G v / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramForm {
    dim: usize,
    entries: Vec<i128>,
}

impl GramForm {
    /// Build from a doubled Gram matrix (row-major). Checks symmetry, even
    /// diagonal and positive definiteness.
    pub fn from_doubled(dim: usize, entries: Vec<i128>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::invalid("gram entries do not match dimension"));
        }
        for i in 0..dim {
            if entries[i * dim + i] % 2 != 0 {
                return Err(Error::invalid("doubled gram needs an even diagonal"));
            }
            for j in 0..i {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::invalid("gram matrix is not symmetric"));
                }
            }
        }
        let g = GramForm { dim, entries };
        if !g.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(g)
    }

    /// The sum-of-squares form on `Z^n`.
    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1; dim])
    }

    /// The form `sum_i d_i x_i^2`.
    pub fn diagonal(d: &[i128]) -> Self {
        let n = d.len();
        let mut e = vec![0i128; n * n];
        for (i, &x) in d.iter().enumerate() {
            e[i * n + i] = 2 * x;
        }
        GramForm::from_doubled(n, e).expect("diagonal form must be positive")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[i128] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.dim + j]
    }

    /// Quadratic value `v^T G v / 2`.
    pub fn value(&self, v: &[i64]) -> i128 {
        let n = self.dim;
        let mut s = 0i128;
        for i in 0..n {
            for j in 0..n {
                s += v[i] as i128 * self.entries[i * n + j] * v[j] as i128;
            }
        }
        s / 2
    }

    fn is_positive_definite(&self) -> bool {
        let big: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        leading_minors(&big, self.dim)
            .map(|d| d.iter().skip(1).all(|x| x.is_positive()))
            .unwrap_or(false)
    }

    /// Determinant of the doubled Gram matrix.
    pub fn det(&self) -> BigInt {
        let big: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        match leading_minors(&big, self.dim) {
            Some(d) => d[self.dim].clone(),
            None => BigInt::zero(),
        }
    }

    /// `U G U^T` for a row-major transform `U` (rows are new basis vectors).
    pub fn transform(&self, u: &[i64]) -> Result<GramForm> {
        let n = self.dim;
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for a in 0..n {
                    if u[i * n + a] == 0 {
                        continue;
                    }
                    for b in 0..n {
                        let t = (u[i * n + a] as i128)
                            .checked_mul(self.entries[a * n + b])
                            .and_then(|t| t.checked_mul(u[j * n + b] as i128))
                            .ok_or(Error::Overflow("gram transform"))?;
                        s = s.checked_add(t).ok_or(Error::Overflow("gram transform"))?;
                    }
                }
                out[i * n + j] = s;
            }
        }
        Ok(GramForm {
            dim: n,
            entries: out,
        })
    }
}

/// Leading principal minors `D_0 = 1, D_1, ..., D_n` by Bareiss elimination
/// without pivoting; `None` if some minor vanishes before the end.
fn leading_minors(entries: &[BigInt], n: usize) -> Option<Vec<BigInt>> {
    let mut a = entries.to_vec();
    let mut d = vec![BigInt::one()];
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = a[k * n + k].clone();
        d.push(piv.clone());
        if piv.is_zero() {
            return if k + 1 == n { Some(d) } else { None };
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (&a[i * n + j] * &piv - &a[i * n + k] * &a[k * n + j]) / &prev;
            }
        }
        prev = piv;
    }
    Some(d)
}

/// Integer arithmetic that may report overflow.
pub(crate) trait Exact: Clone + Ord + Debug + Zero + One {
    fn add_(&self, o: &Self) -> Option<Self>;
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    /// Exact or truncating division.
    fn div_(&self, o: &Self) -> Self;
    fn div_floor_(&self, o: &Self) -> Self;
    fn isqrt_(&self) -> Self;
    fn from_i128(v: i128) -> Self;
    fn to_i64_(&self) -> Option<i64>;
    fn to_i128_(&self) -> Option<i128>;
    fn is_neg(&self) -> bool;
    fn neg_(&self) -> Self;
}

impl Exact for i128 {
    fn add_(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor_(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn isqrt_(&self) -> Self {
        isqrt_i128(*self)
    }
    fn from_i128(v: i128) -> Self {
        v
    }
    fn to_i64_(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_i128_(&self) -> Option<i128> {
        Some(*self)
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg_(&self) -> Self {
        -self
    }
}

impl Exact for BigInt {
    fn add_(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor_(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn isqrt_(&self) -> Self {
        self.sqrt()
    }
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn to_i64_(&self) -> Option<i64> {
        self.to_i64()
    }
    fn to_i128_(&self) -> Option<i128> {
        self.to_i128()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn neg_(&self) -> Self {
        -self
    }
}

/// Floor of the square root of a nonnegative `i128`.
pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative");
    if n < 2 {
        return n;
    }
    // Newton iteration from a power of two above the root.
    let bits = 128 - n.leading_zeros();
    let mut x: i128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Result of exact LLL reduction: the reduced form and the transform `U`
/// whose rows express the new basis in the old one.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub gram: GramForm,
    pub transform: Vec<i64>,
}

/// LLL-reduce (delta = 3/4) a positive definite form.
pub fn lll(g: &GramForm) -> Result<Reduced> {
    if let Some(r) = lll_generic::<i128>(g) {
        return r;
    }
    lll_generic::<BigInt>(g).expect("BigInt arithmetic cannot overflow")
}

macro_rules! ck {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => return None,
        }
    };
}

/// Integral LLL on the Gram matrix (Cohen, Alg. 2.6.7). Returns `None` on
/// overflow of `T`.
fn lll_generic<T: Exact>(g: &GramForm) -> Option<Result<Reduced>> {
    let n = g.dim;
    if n == 0 {
        return Some(Ok(Reduced {
            gram: g.clone(),
            transform: Vec::new(),
        }));
    }
    // Work with 1-based indices to mirror the textbook recurrences.
    let mut b: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            b[i + 1][j + 1] = T::from_i128(g.get(i, j));
        }
    }
    let mut h: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; n + 1];
    for (i, row) in h.iter_mut().enumerate().skip(1) {
        row[i] = T::one();
    }
    let mut d: Vec<T> = vec![T::zero(); n + 1];
    let mut lam: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; n + 1];
    d[0] = T::one();
    d[1] = b[1][1].clone();
    let mut k = 2usize;
    let mut kmax = 1usize;

    // b_k <- b_k - q b_l on the Gram matrix and the transform.
    fn red<T: Exact>(
        k: usize,
        l: usize,
        n: usize,
        b: &mut [Vec<T>],
        h: &mut [Vec<T>],
        d: &[T],
        lam: &mut [Vec<T>],
    ) -> Option<()> {
        let two_l = lam[k][l].mul_(&T::from_i128(2))?;
        let abs2 = if two_l.is_neg() { two_l.neg_() } else { two_l };
        if abs2 <= d[l] {
            return Some(());
        }
        // q = round(lam / d_l)
        let num = lam[k][l].mul_(&T::from_i128(2))?.add_(&d[l])?;
        let den = d[l].mul_(&T::from_i128(2))?;
        let q = num.div_floor_(&den);
        for j in 1..=n {
            h[k][j] = h[k][j].sub_(&q.mul_(&h[l][j])?)?;
        }
        // Gram update: G_kk first (needs old G_kl), then row/col k.
        let gkl = b[k][l].clone();
        let new_kk = b[k][k]
            .sub_(&q.mul_(&gkl)?.mul_(&T::from_i128(2))?)?
            .add_(&q.mul_(&q)?.mul_(&b[l][l])?)?;
        for j in 1..=n {
            if j == k {
                continue;
            }
            let v = b[k][j].sub_(&q.mul_(&b[l][j])?)?;
            b[k][j] = v.clone();
            b[j][k] = v;
        }
        b[k][k] = new_kk;
        lam[k][l] = lam[k][l].sub_(&q.mul_(&d[l])?)?;
        for i in 1..l {
            lam[k][i] = lam[k][i].sub_(&q.mul_(&lam[l][i])?)?;
        }
        Some(())
    }

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = b[k][j].clone();
                for i in 1..j {
                    u = d[i]
                        .mul_(&u)?
                        .sub_(&lam[k][i].mul_(&lam[j][i])?)?
                        .div_(&d[i - 1]);
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u <= T::zero() {
                        return Some(Err(Error::NotPositiveDefinite));
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            ck!(red(k, k - 1, n, &mut b, &mut h, &d, &mut lam));
            let lhs = ck!(ck!(d[k].mul_(&d[k - 2])).mul_(&T::from_i128(4)));
            let rhs = ck!(ck!(ck!(d[k - 1].mul_(&d[k - 1])).mul_(&T::from_i128(3)))
                .sub_(&ck!(ck!(lam[k][k - 1].mul_(&lam[k][k - 1])).mul_(&T::from_i128(4)))));
            if lhs < rhs {
                // SWAP(k)
                h.swap(k, k - 1);
                b.swap(k, k - 1);
                for row in b.iter_mut() {
                    row.swap(k, k - 1);
                }
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = ck!(ck!(d[k - 2].mul_(&d[k])).add_(&ck!(l.mul_(&l)))).div_(&d[k - 1]);
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = ck!(ck!(d[k].mul_(&lam[i][k - 1])).sub_(&ck!(l.mul_(&t))))
                        .div_(&d[k - 1]);
                    lam[i][k - 1] =
                        ck!(ck!(bb.mul_(&t)).add_(&ck!(l.mul_(&lam[i][k])))).div_(&d[k]);
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    ck!(red(k, l, n, &mut b, &mut h, &d, &mut lam));
                }
                k += 1;
                break;
            }
        }
    }

    let mut entries = vec![0i128; n * n];
    let mut transform = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = ck!(b[i + 1][j + 1].to_i128_());
            transform[i * n + j] = ck!(h[i + 1][j + 1].to_i64_());
        }
    }
    Some(Ok(Reduced {
        gram: GramForm { dim: n, entries },
        transform,
    }))
}

/// Visit every integer vector `x` with `x^T G x <= bound` (so quadratic value
/// at most `bound / 2`), including zero. The callback receives the vector and
/// its value `x^T G x`.
pub fn for_each_vector(g: &GramForm, bound: i128, mut f: impl FnMut(&[i64], i128)) {
    if bound < 0 {
        return;
    }
    let mut seen: Vec<(Vec<i64>, i128)> = Vec::new();
    let ok = enumerate_generic::<i128>(g, bound, &mut |x, v| seen.push((x.to_vec(), v)));
    if ok.is_none() {
        seen.clear();
        enumerate_generic::<BigInt>(g, bound, &mut |x, v| seen.push((x.to_vec(), v)))
            .expect("BigInt arithmetic cannot overflow");
    }
    for (x, v) in seen {
        f(&x, v);
    }
}

struct Decomp<T> {
    n: usize,
    dk: Vec<T>,
    lam: Vec<Vec<T>>,
    w: Vec<T>,
    lambda_scale: T,
}

fn decompose<T: Exact>(g: &GramForm) -> Option<Decomp<T>> {
    let n = g.dim;
    let mut d: Vec<T> = vec![T::zero(); n + 1];
    d[0] = T::one();
    let mut lam: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; n + 1];
    for k in 1..=n {
        for j in 1..=k {
            let mut u = T::from_i128(g.get(k - 1, j - 1));
            for i in 1..j {
                u = d[i]
                    .mul_(&u)?
                    .sub_(&lam[k][i].mul_(&lam[j][i])?)?
                    .div_(&d[i - 1]);
            }
            if j < k {
                lam[k][j] = u;
            } else {
                d[k] = u;
            }
        }
    }
    // Lambda = D_n * prod_{k<n} D_k^2, w_k = Lambda / (D_{k-1} D_k).
    let mut scale = d[n].clone();
    for dk in d.iter().take(n).skip(1) {
        scale = scale.mul_(dk)?.mul_(dk)?;
    }
    let mut w = vec![T::zero(); n + 1];
    for k in 1..=n {
        w[k] = scale.div_(&d[k - 1].mul_(&d[k])?);
    }
    Some(Decomp {
        n,
        dk: d,
        lam,
        w,
        lambda_scale: scale,
    })
}

/// With `z_k = D_k x_k + sum_{l>k} lam_{l,k} x_l` one has
/// `x^T G x = sum_k z_k^2 / (D_{k-1} D_k)`; the search bounds each `z_k`
/// exactly by integer square roots.
fn enumerate_generic<T: Exact>(
    g: &GramForm,
    bound: i128,
    f: &mut dyn FnMut(&[i64], i128),
) -> Option<()> {
    let dec = decompose::<T>(g)?;
    let total = dec.lambda_scale.mul_(&T::from_i128(bound))?;
    let mut x = vec![0i64; dec.n + 1];
    rec(&dec, dec.n, &total, &total, &mut x, f)
}

fn rec<T: Exact>(
    dec: &Decomp<T>,
    k: usize,
    budget: &T,
    total: &T,
    x: &mut [i64],
    f: &mut dyn FnMut(&[i64], i128),
) -> Option<()> {
    if k == 0 {
        let used = total.sub_(budget)?;
        let val = used.div_(&dec.lambda_scale).to_i128_()?;
        f(&x[1..], val);
        return Some(());
    }
    let mut c = T::zero();
    for l in k + 1..=dec.n {
        if x[l] != 0 {
            c = c.add_(&dec.lam[l][k].mul_(&T::from_i128(x[l] as i128))?)?;
        }
    }
    let s = budget.div_floor_(&dec.w[k]).isqrt_();
    let dk = &dec.dk[k];
    // ceil((-c - s) / D_k) ..= floor((s - c) / D_k)
    let lo_num = c.neg_().sub_(&s)?;
    let lo = lo_num.neg_().div_floor_(dk).neg_();
    let hi = s.sub_(&c)?.div_floor_(dk);
    let lo = lo.to_i64_()?;
    let hi = hi.to_i64_()?;
    for xk in lo..=hi {
        let z = dk.mul_(&T::from_i128(xk as i128))?.add_(&c)?;
        let used = dec.w[k].mul_(&z.mul_(&z)?)?;
        if used > *budget {
            continue;
        }
        x[k] = xk;
        let rest = budget.sub_(&used)?;
        rec(dec, k - 1, &rest, total, x, f)?;
    }
    x[k] = 0;
    Some(())
}

/// Number of vectors with quadratic value exactly `m` (both `v` and `-v`).
pub fn short_vector_count(g: &GramForm, m: u64) -> Result<u64> {
    if m == 0 {
        return Ok(1);
    }
    let r = lll(g)?;
    Ok(count_value(&r.gram, m))
}

/// Count of vectors with quadratic value `m` on an already reduced form.
pub fn count_value(g: &GramForm, m: u64) -> u64 {
    let target = 2 * m as i128;
    let mut count = 0u64;
    for_each_vector(g, target, |_, v| {
        if v == target {
            count += 1;
        }
    });
    count
}

/// Representation numbers `r(0), ..., r(m)` of the quadratic value.
pub fn theta_series(g: &GramForm, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; m as usize + 1];
    for_each_vector(g, 2 * m as i128, |_, v| {
        out[(v / 2) as usize] += 1;
    });
    out
}

/// A shortest nonzero vector and its quadratic value, on a reduced form.
pub fn shortest_vector(g: &GramForm) -> (Vec<i64>, i128) {
    let n = g.dim;
    let mut best_val = (0..n).map(|i| g.get(i, i)).min().unwrap_or(0);
    let mut best: Vec<i64> = Vec::new();
    for_each_vector(g, best_val, |x, v| {
        if v > 0 && (best.is_empty() || v < best_val || (v == best_val && x < &best[..])) {
            best_val = v;
            best = x.to_vec();
        }
    });
    (best, best_val / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_examples() {
        assert_eq!(short_vector_count(&GramForm::identity(4), 1).unwrap(), 8);
        assert_eq!(short_vector_count(&GramForm::identity(4), 2).unwrap(), 24);
        assert_eq!(short_vector_count(&GramForm::diagonal(&[2, 2]), 1).unwrap(), 0);
    }

    #[test]
    fn rejects_indefinite() {
        assert!(matches!(
            GramForm::from_doubled(2, vec![2, 4, 4, 2]),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn sum_of_four_squares() {
        // r_4(n) = 8 * sum_{d | n, 4 ∤ d} d
        let g = GramForm::identity(4);
        let th = theta_series(&g, 30);
        for (n, &c) in th.iter().enumerate().skip(1) {
            let s: u64 = (1..=n as u64).filter(|d| n as u64 % d == 0 && d % 4 != 0).sum();
            assert_eq!(c, 8 * s, "n = {n}");
        }
    }

    #[test]
    fn reduction_of_skewed_basis() {
        // Basis (1,0),(1000,1) of the sum-of-two-squares lattice.
        let g = GramForm::from_doubled(2, vec![2, 2000, 2000, 2 * 1_000_001]).unwrap();
        let r = lll(&g).unwrap();
        assert_eq!(r.gram.get(0, 0), 2);
        assert_eq!(r.gram.get(1, 1), 2);
        assert_eq!(short_vector_count(&g, 1).unwrap(), 4);
        assert_eq!(shortest_vector(&r.gram).1, 1);
    }

    #[test]
    fn big_entries_fall_back() {
        let a = 1i128 << 50;
        let g = GramForm::from_doubled(3, vec![2, 2 * a, 0, 2 * a, 2 * a * a + 2, 0, 0, 0, 2 * a])
            .unwrap();
        let th = theta_series(&lll(&g).unwrap().gram, 2);
        assert_eq!(th, vec![1, 4, 4]);
    }

    /// Representation counts up to `m` by scanning the box `[-r, r]^n`.
    fn brute(g: &GramForm, m: u64, r: i64) -> Vec<u64> {
        let n = g.dim();
        let mut tally = vec![0u64; m as usize + 1];
        let mut v = vec![-r; n];
        loop {
            let q = g.value(&v);
            if q <= m as i128 {
                tally[q as usize] += 1;
            }
            let mut i = 0;
            while i < n {
                v[i] += 1;
                if v[i] <= r {
                    break;
                }
                v[i] = -r;
                i += 1;
            }
            if i == n {
                return tally;
            }
        }
    }

    fn pd_form() -> impl Strategy<Value = GramForm> {
        (
            proptest::collection::vec(4i128..=10, 4),
            proptest::collection::vec(-10i128..=10, 6),
        )
            .prop_filter_map("not positive definite", |(diag, off)| {
                let mut e = vec![0i128; 16];
                let mut t = off.iter();
                for i in 0..4 {
                    e[i * 4 + i] = 2 * diag[i];
                    for j in i + 1..4 {
                        let v = *t.next().unwrap();
                        e[i * 4 + j] = v;
                        e[j * 4 + i] = v;
                    }
                }
                GramForm::from_doubled(4, e).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn count_matches_brute_force(g in pd_form()) {
            // For positive definite G, x_i^2 <= (x^T G x) * adj_ii / det.
            let det = g.det();
            let adj = adjugate_diag(&g);
            let r = (0..4)
                .map(|i| {
                    let q: BigInt = BigInt::from(40) * &adj[i] / &det;
                    (q.sqrt() + 1u32).to_i64().unwrap()
                })
                .max()
                .unwrap();
            prop_assume!(r <= 12);
            let tally = brute(&g, 20, r);
            for m in 1..=20u64 {
                prop_assert_eq!(short_vector_count(&g, m).unwrap(), tally[m as usize]);
            }
        }
    }

    /// Diagonal of the adjugate of the doubled Gram matrix.
    fn adjugate_diag(g: &GramForm) -> Vec<BigInt> {
        let n = g.dim();
        (0..n)
            .map(|skip| {
                let idx: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
                let e: Vec<BigInt> = idx
                    .iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| BigInt::from(g.get(i, j)))
                    .collect();
                leading_minors(&e, n - 1).unwrap()[n - 1].clone()
            })
            .collect()
    }
}
