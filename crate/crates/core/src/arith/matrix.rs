//! Dense integer matrices: characteristic polynomials, determinants, saturated
//! kernels, Hermite normal form and restriction to invariant sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{inv_mod, word_primes};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&big)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        if let (Some(a), Some(b)) = (self.to_i64(), rhs.to_i64()) {
            if let Some(c) = mul_i64(&a, &b, self.rows, self.cols, rhs.cols) {
                return IntMatrix {
                    rows: self.rows,
                    cols: rhs.cols,
                    data: c.into_iter().map(BigInt::from).collect(),
                };
            }
        }
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

fn mul_i64(a: &[i64], b: &[i64], n: usize, m: usize, k: usize) -> Option<Vec<i64>> {
    let mut out = vec![0i64; n * k];
    for i in 0..n {
        for l in 0..m {
            let x = a[i * m + l] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..k {
                let y = b[l * k + j] as i128;
                let acc = out[i * k + j] as i128 + x * y;
                out[i * k + j] = i64::try_from(acc).ok()?;
            }
        }
    }
    Some(out)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Characteristic polynomial `det(x I - M)`.
///
/// Computed by Hessenberg reduction modulo word-sized primes and Chinese
/// remaindering. The number of primes is chosen from the bound
/// `prod_i (1 + ||row_i||_2)` on every coefficient, so the result is exact.
pub fn charpoly(m: &IntMatrix) -> Result<IntPolynomial> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let mut bound = BigInt::one();
    for i in 0..n {
        let ss: BigInt = m.row(i).iter().map(|x| x * x).sum();
        let mut r = ss.sqrt();
        if &r * &r < ss {
            r += 1;
        }
        bound *= r + 1;
    }
    let target = bound * 2;

    let small = m.to_i64();
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for &p in word_primes() {
        if modulus > target {
            break;
        }
        let reduced: Vec<u64> = match &small {
            Some(v) => v.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect(),
            None => m
                .data
                .iter()
                .map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect(),
        };
        let cp = charpoly_mod_p(reduced, n, p);
        crt_accumulate(&mut acc, &modulus, &cp, p);
        modulus *= p;
    }
    if modulus <= target {
        return Err(Error::internal("ran out of CRT primes in charpoly"));
    }
    let half = &modulus >> 1;
    for c in acc.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    Ok(IntPolynomial::new(acc))
}

fn crt_accumulate(acc: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let bp = BigInt::from(p);
    let minv = inv_mod(modulus.mod_floor(&bp).to_u64().unwrap(), p);
    for (a, &r) in acc.iter_mut().zip(residues) {
        let cur = a.mod_floor(&bp).to_u64().unwrap();
        let diff = (r + p - cur) % p;
        let t = diff * minv % p;
        if t != 0 {
            *a += modulus * t;
        }
    }
}

/// Characteristic polynomial over F_p (p < 2^31) of a row-major n x n matrix.
pub fn charpoly_mod_p(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    // Similarity transform to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let piv = (m..n).find(|&i| h[i * n + m - 1] != 0);
        let Some(i) = piv else { continue };
        if i != m {
            for j in 0..n {
                h.swap(i * n + j, m * n + j);
            }
            for j in 0..n {
                h.swap(j * n + i, j * n + m);
            }
        }
        let inv = inv_mod(h[m * n + m - 1], p);
        for i in m + 1..n {
            let u = h[i * n + m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            let nu = p - u;
            for j in 0..n {
                h[i * n + j] = (h[i * n + j] + nu * h[m * n + j]) % p;
            }
            for j in 0..n {
                h[j * n + m] = (h[j * n + m] + u * h[j * n + i]) % p;
            }
        }
    }
    // Recurrence for the leading principal charpolys of a Hessenberg matrix.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 0..n {
        // (x - h_mm) * p_m
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        let hmm = h[m * n + m];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + (p - hmm) * c) % p;
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = t * h[(i + 1) * n + i] % p;
            if t == 0 {
                break;
            }
            let coef = t * h[i * n + m] % p;
            if coef == 0 {
                continue;
            }
            let nc = p - coef;
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + nc * c) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.row_vecs();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Combine rows `r` and `s` of `a` so that `a[s][col]` becomes zero, using a
/// unimodular 2x2 transform built from the extended gcd.
fn eliminate(a: &mut [Vec<BigInt>], r: usize, s: usize, col: usize) {
    let x = a[r][col].clone();
    let y = a[s][col].clone();
    if y.is_zero() {
        return;
    }
    let eg = x.extended_gcd(&y);
    let (g, u, v) = (eg.gcd, eg.x, eg.y);
    let xg = &x / &g;
    let yg = &y / &g;
    let width = a[r].len();
    for j in 0..width {
        let ar = a[r][j].clone();
        let as_ = a[s][j].clone();
        a[r][j] = &u * &ar + &v * &as_;
        a[s][j] = &xg * &as_ - &yg * &ar;
    }
}

/// Row echelon form over Z by unimodular row operations, restricted to the
/// first `ncols` columns. Returns the pivot columns.
fn echelon(a: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(first) = (row..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, first);
        for i in row + 1..nrows {
            if !a[i][col].is_zero() {
                eliminate(a, row, i, col);
            }
        }
        if a[row][col].is_negative() {
            for x in a[row].iter_mut() {
                *x = -&*x;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut a = rows.to_vec();
    let pivots = echelon(&mut a, ncols);
    a.truncate(pivots.len());
    for (i, &pc) in pivots.iter().enumerate() {
        for k in 0..i {
            let q = a[k][pc].div_floor(&a[i][pc]);
            if !q.is_zero() {
                let ri = a[i].clone();
                for (x, y) in a[k].iter_mut().zip(&ri) {
                    *x -= &q * y;
                }
            }
        }
    }
    a
}

/// Basis of the saturated integer kernel `{v : M v = 0}`, in Hermite form.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (r, c) = (m.rows, m.cols);
    // Rows of [M^T | I]; unimodular row reduction of the left block leaves the
    // kernel in the right block of the rows whose left part vanished.
    let mut a: Vec<Vec<BigInt>> = (0..c)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|k| m.get(k, i).clone()).collect();
            row.extend((0..c).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = echelon(&mut a, r).len();
    let kernel: Vec<Vec<BigInt>> = a[rank..].iter().map(|row| row[r..].to_vec()).collect();
    hnf(&kernel)
}

/// Matrix of `t` on the sublattice spanned by `basis`, i.e. the integer `R`
/// with `t * b_j = sum_i R[i][j] * b_i`.
pub fn restrict_operator(t: &IntMatrix, basis: &[Vec<BigInt>]) -> Result<IntMatrix> {
    t.require_square()?;
    let n = t.rows;
    let k = basis.len();
    if basis.iter().any(|b| b.len() != n) {
        return Err(Error::invalid("basis vector length does not match operator"));
    }
    // [B | I_k] -> [E | U] with E = U B in echelon form.
    let mut a: Vec<Vec<BigInt>> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row = b.clone();
            row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let pivots = echelon(&mut a, n);
    if pivots.len() != k {
        return Err(Error::invalid("basis vectors are linearly dependent"));
    }
    let e: Vec<&[BigInt]> = a.iter().map(|r| &r[..n]).collect();
    let u: Vec<&[BigInt]> = a.iter().map(|r| &r[n..]).collect();

    let small_t = t.to_i64();
    let mut out = IntMatrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let image = apply(t, small_t.as_deref(), b);
        let coords = solve_echelon(&e, &pivots, &image)?;
        for l in 0..k {
            let s: BigInt = coords.iter().zip(&u).map(|(c, urow)| c * &urow[l]).sum();
            out.set(l, j, s);
        }
    }
    Ok(out)
}

fn apply(t: &IntMatrix, small: Option<&[i64]>, v: &[BigInt]) -> Vec<BigInt> {
    let n = t.rows;
    if let Some(ts) = small {
        let vs: Option<Vec<i64>> = v.iter().map(ToPrimitive::to_i64).collect();
        if let Some(vs) = vs {
            let mut out = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let mut acc: i128 = 0;
                for (x, y) in ts[i * n..(i + 1) * n].iter().zip(&vs) {
                    if *x != 0 && *y != 0 {
                        match acc.checked_add(*x as i128 * *y as i128) {
                            Some(s) => acc = s,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
                if !ok {
                    break;
                }
                out.push(BigInt::from(acc));
            }
            if ok {
                return out;
            }
        }
    }
    t.mul_vec(v)
}

fn solve_echelon(e: &[&[BigInt]], pivots: &[usize], v: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut r = v.to_vec();
    let mut coords = Vec::with_capacity(e.len());
    for (row, &pc) in e.iter().zip(pivots) {
        let (q, rem) = r[pc].div_rem(&row[pc]);
        if !rem.is_zero() {
            return Err(classify_failure(e, pivots, v));
        }
        if !q.is_zero() {
            for (x, y) in r.iter_mut().zip(row.iter()) {
                *x -= &q * y;
            }
        }
        coords.push(q);
    }
    if r.iter().all(Zero::is_zero) {
        Ok(coords)
    } else {
        Err(Error::NotInvariant)
    }
}

/// Distinguish "not in the rational span" from "in the span with fractional
/// coordinates".
fn classify_failure(e: &[&[BigInt]], pivots: &[usize], v: &[BigInt]) -> Error {
    let mut r: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
    for (row, &pc) in e.iter().zip(pivots) {
        let q = &r[pc] / BigRational::from(row[pc].clone());
        for (x, y) in r.iter_mut().zip(row.iter()) {
            *x -= &q * BigRational::from(y.clone());
        }
    }
    if r.iter().all(Zero::is_zero) {
        Error::NonIntegral
    } else {
        Error::NotInvariant
    }
}
