//! Zassenhaus factorization of squarefree primitive polynomials: modular
//! factorization, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::fp_poly::{self as fp, Fpx};
use crate::arith::lattice::isqrt_i128;
use crate::arith::modp::{inv_mod, is_prime};
use crate::arith::poly::IntPolynomial;

/// Number of good primes examined before choosing one for lifting.
pub const CANDIDATE_PRIMES: usize = 10;

/// Modular data at one prime of good reduction.
#[derive(Clone, Debug)]
pub struct ModularPattern {
    pub p: u64,
    /// `(d, k)`: `k` irreducible factors of degree `d` modulo `p`.
    pub ddf: Vec<(usize, usize)>,
}

impl ModularPattern {
    pub fn factor_count(&self) -> usize {
        self.ddf.iter().map(|&(_, k)| k).sum()
    }

    /// Degrees of all products of subsets of the modular factors.
    pub fn subset_degrees(&self, n: usize) -> Vec<bool> {
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for &(d, k) in &self.ddf {
            for _ in 0..k {
                for s in (d..=n).rev() {
                    if reach[s - d] {
                        reach[s] = true;
                    }
                }
            }
        }
        reach
    }
}

/// `f mod p` is squarefree of full degree.
pub fn good_prime(f: &IntPolynomial, p: u64) -> Option<Fpx> {
    let fp_ = fp::from_int(f, p);
    if fp_.len() != f.deg() + 1 {
        return None;
    }
    let g = fp::gcd(&fp_, &fp::derivative(&fp_, p), p);
    (g.len() == 1).then(|| fp::monic(&fp_, p))
}

/// Rows `x^(p j) mod f` for `j < deg f`.
fn frobenius_matrix(f: &[u64], p: u64) -> Vec<Fpx> {
    let n = f.len() - 1;
    let xp = fp::powmod(&[0, 1], &BigInt::from(p), f, p);
    let mut rows = Vec::with_capacity(n);
    let mut cur: Fpx = vec![1];
    for _ in 0..n {
        rows.push(cur.clone());
        cur = fp::mulmod(&cur, &xp, f, p);
    }
    rows
}

fn apply_frobenius(q: &[Fpx], h: &[u64], p: u64) -> Fpx {
    let n = q.len();
    let mut acc = vec![0u64; n];
    for (j, &c) in h.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, &r) in acc.iter_mut().zip(&q[j]) {
            *a = (*a + c * r) % p;
        }
    }
    fp::trim(&mut acc);
    acc
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(d, product of the degree-d factors)`.
pub fn ddf(f: &[u64], p: u64) -> Vec<(usize, Fpx)> {
    let q = frobenius_matrix(f, p);
    let mut rest = f.to_vec();
    let mut h: Fpx = fp::rem(&[0, 1], f, p);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.len() - 1, rest));
            break;
        }
        h = apply_frobenius(&q, &h, p);
        let g = fp::gcd(&rest, &fp::sub(&h, &[0, 1], p), p);
        if g.len() > 1 {
            rest = fp::divrem(&rest, &g, p).0;
            out.push((d, g));
        }
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a product of degree-`d`
/// factors, `p` odd.
pub fn edf(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fpx> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let e = (num_traits::pow(BigInt::from(p), d) - 1u32) / 2u32;
    loop {
        let mut a: Fpx = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp::trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp::sub(&fp::powmod(&a, &e, g, p), &[1], p);
        let c = fp::gcd(g, &b, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp::monic(&fp::divrem(g, &c, p).0, p);
            let mut out = edf(&c, d, p, rng);
            out.extend(edf(&other, d, p, rng));
            return out;
        }
    }
}

/// Scan good odd primes and return up to `CANDIDATE_PRIMES` patterns.
pub fn modular_patterns(f: &IntPolynomial) -> Vec<(ModularPattern, Fpx)> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while out.len() < CANDIDATE_PRIMES {
        if is_prime(p) {
            if let Some(fm) = good_prime(f, p) {
                let parts = ddf(&fm, p);
                let pattern = ModularPattern {
                    p,
                    ddf: parts.iter().map(|(d, g)| (*d, (g.len() - 1) / d)).collect(),
                };
                let single = pattern.factor_count() == 1;
                out.push((pattern, fm));
                if single {
                    break;
                }
            }
        }
        p += 2;
    }
    out
}

type Zpx = Vec<BigInt>;

fn ztrim(v: &mut Zpx) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn zreduce(a: &[BigInt], m: &BigInt) -> Zpx {
    let mut v: Zpx = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut v);
    v
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zpx {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Zpx = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    zreduce(&v, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zpx {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Zpx = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    zreduce(&v, m)
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zpx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zreduce(&v, m)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zpx, Zpx) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    r.truncate(db);
    (zreduce(&q, m), zreduce(&r, m))
}

fn lift_fp(a: &[u64]) -> Zpx {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` mod `m` to the
/// same relations mod `m2`, where `m2 | m^2`. `g`, `h` monic.
fn hensel_step(
    f: &[BigInt],
    g: &Zpx,
    h: &Zpx,
    s: &Zpx,
    t: &Zpx,
    m2: &BigInt,
) -> (Zpx, Zpx, Zpx, Zpx) {
    let e = zsub(f, &zmul(g, h, m2), m2);
    let (q, r) = zdivrem(&zmul(s, &e, m2), h, m2);
    let g2 = zadd(g, &zadd(&zmul(t, &e, m2), &zmul(&q, g, m2), m2), m2);
    let h2 = zadd(h, &r, m2);
    let b = zsub(
        &zadd(&zmul(s, &g2, m2), &zmul(t, &h2, m2), m2),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = zdivrem(&zmul(s, &b, m2), &h2, m2);
    let s2 = zsub(s, &d, m2);
    let t2 = zsub(&zsub(t, &zmul(t, &b, m2), m2), &zmul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lift the monic factorization `f = prod facs (mod p)` to modulus `p^k`,
/// splitting the factor list in halves.
fn multifactor_lift(f: &[BigInt], facs: &[Fpx], p: u64, k: u32) -> Vec<Zpx> {
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let prod = |fs: &[Fpx]| fs.iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
    let (g0, h0) = (prod(left), prod(right));
    let (one, s0, t0) = fp::xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut e = 1u32;
    while e < k {
        let e2 = (2 * e).min(k);
        let m2 = num_traits::pow(pb.clone(), e2 as usize);
        let fm = zreduce(f, &m2);
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m2);
        e = e2;
    }
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPolynomial {
    let half: BigInt = m >> 1;
    IntPolynomial::new(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Coefficient bound for `lc(f) g` with `g | f`.
fn factor_bound(f: &IntPolynomial) -> BigInt {
    let n = f.deg();
    let root = isqrt_i128(n as i128 + 1) + 1;
    BigInt::from(root) * (BigInt::one() << n) * f.max_abs_coeff() * f.lead().unwrap().abs()
}

fn subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a squarefree primitive `f` of positive degree with
/// positive leading coefficient.
pub fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let pats = modular_patterns(f);
    let mut allowed = vec![true; n + 1];
    for (pat, _) in &pats {
        for (a, r) in allowed.iter_mut().zip(pat.subset_degrees(n)) {
            *a &= r;
        }
    }
    if (1..n).all(|d| !allowed[d]) {
        return vec![f.clone()];
    }
    let (pat, fm) = pats
        .iter()
        .min_by_key(|(pat, _)| (pat.factor_count(), pat.p))
        .expect("good primes exist");
    let p = pat.p;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut modular: Vec<Fpx> = Vec::new();
    for (d, g) in ddf(fm, p) {
        modular.extend(edf(&g, d, p, &mut rng));
    }

    let bound = factor_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        k += 1;
        modulus *= &pb;
    }
    let lc = f.lead().unwrap().clone();
    // Newton iteration for lc^-1 mod p^k.
    let lc_inv = {
        let mut x = BigInt::from(inv_mod(fp::reduce_int(&lc, p), p));
        let mut m = pb.clone();
        while m < modulus {
            m = (&m * &m).min(modulus.clone());
            x = (&x * (BigInt::from(2u32) - &lc * &x)).mod_floor(&m);
        }
        x
    };
    let target: Zpx = zreduce(
        &f.coeffs().iter().map(|c| c * &lc_inv).collect::<Vec<_>>(),
        &modulus,
    );
    let lifted = multifactor_lift(&target, &modular, p, k);

    recombine(f, lifted, &modulus, &allowed)
}

fn recombine(f: &IntPolynomial, lifted: Vec<Zpx>, m: &BigInt, allowed: &[bool]) -> Vec<IntPolynomial> {
    let mut remaining: Vec<Zpx> = lifted;
    let mut fstar = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found: Option<(Vec<usize>, IntPolynomial, IntPolynomial)> = None;
        let lc = fstar.lead().unwrap().clone();
        let f0 = fstar.coeff(0);
        let trail_target = &lc * &f0;
        let degs: Vec<usize> = remaining.iter().map(|u| u.len() - 1).collect();
        let consts: Vec<BigInt> = remaining.iter().map(|u| u[0].clone()).collect();
        let r = remaining.len();
        subsets(r, s, |idx| {
            let d: usize = idx.iter().map(|&i| degs[i]).sum();
            if !allowed[d] {
                return false;
            }
            if !f0.is_zero() {
                let mut c = lc.clone();
                for &i in idx {
                    c = (c * &consts[i]).mod_floor(m);
                }
                let half: BigInt = m >> 1;
                if c > half {
                    c -= m;
                }
                if c.is_zero() || !(&trail_target % &c).is_zero() {
                    return false;
                }
            }
            let mut g: Zpx = vec![lc.mod_floor(m)];
            for &i in idx {
                g = zmul(&g, &remaining[i], m);
            }
            let g = symmetric(&g, m).primitive_part();
            if let Some(q) = fstar.div_exact(&g) {
                found = Some((idx.to_vec(), g, q));
                return true;
            }
            false
        });
        match found {
            Some((idx, g, q)) => {
                out.push(g);
                fstar = q.primitive_part();
                let mut k = 0;
                remaining.retain(|_| {
                    let keep = !idx.contains(&k);
                    k += 1;
                    keep
                });
            }
            None => s += 1,
        }
    }
    if fstar.deg() > 0 {
        out.push(fstar.primitive_part());
    }
    out
}
