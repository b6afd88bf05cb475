//! Hilbert symbols over Q.

use std::fmt;

use super::modp::legendre;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

fn split(mut a: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    (v, a)
}

/// `(a, b)_v`: +1 if `a x^2 + b y^2 = z^2` has a nontrivial solution over the
/// completion at `v`, else -1.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i32> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("hilbert symbol of zero"));
    }
    let p = match place {
        Place::Infinity => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) => p as i64,
    };
    let (alpha, u) = split(a, p);
    let (beta, v) = split(b, p);
    if p == 2 {
        let eps = |x: i64| (x.rem_euclid(4) == 3) as u32;
        let omega = |x: i64| matches!(x.rem_euclid(8), 3 | 5) as u32;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s = if (alpha * beta) % 2 == 1 && p % 4 == 3 {
        -1
    } else {
        1
    };
    if beta % 2 == 1 {
        s *= legendre(u, p as u64);
    }
    if alpha % 2 == 1 {
        s *= legendre(v, p as u64);
    }
    Ok(s)
}
