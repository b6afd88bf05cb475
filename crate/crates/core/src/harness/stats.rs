//! Orbit averages, tables and figure data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ingest::{orbit_sizes_by_level, NewformRecord};
use super::record::SweepRecord;
use crate::arith::modp::{is_prime, squarefree_factors};
use crate::error::{Error, Result};
use crate::heuristics::to_f64;

/// Orbit sizes per level. Levels up to `implicit_zero_to` that are absent
/// have no newforms; beyond that, absence is a coverage gap.
#[derive(Clone, Debug, Default)]
pub struct LevelTable {
    pub sizes: BTreeMap<u64, Vec<usize>>,
    pub implicit_zero_to: u64,
}

impl LevelTable {
    /// Sweep records list every level explicitly.
    pub fn from_sweep(records: &[SweepRecord]) -> Self {
        LevelTable {
            sizes: records
                .iter()
                .map(|r| (r.level, r.orbit_sizes.clone()))
                .collect(),
            implicit_zero_to: 0,
        }
    }

    /// Database exports omit empty levels; everything up to the largest level
    /// seen counts as covered.
    pub fn from_ingested(records: &[NewformRecord], weight: u32) -> Self {
        let sizes = orbit_sizes_by_level(records, weight);
        let implicit_zero_to = sizes.keys().next_back().copied().unwrap_or(0);
        LevelTable {
            sizes,
            implicit_zero_to,
        }
    }

    pub fn get(&self, level: u64) -> Option<&[usize]> {
        match self.sizes.get(&level) {
            Some(v) => Some(v),
            None if level <= self.implicit_zero_to => Some(&[]),
            None => None,
        }
    }

    /// Orbit sizes for each level in `levels`, or the list of gaps.
    pub fn require(&self, levels: &[u64]) -> Result<Vec<&[usize]>> {
        let gaps: Vec<u64> = levels.iter().copied().filter(|&n| self.get(n).is_none()).collect();
        if !gaps.is_empty() {
            return Err(Error::CoverageGap(gaps));
        }
        Ok(levels.iter().map(|&n| self.get(n).unwrap()).collect())
    }
}

/// Squarefree `N <= x` with exactly `r` prime factors.
pub fn squarefree_levels(x: u64, r: u32) -> Vec<u64> {
    (2..=x)
        .filter(|&n| squarefree_factors(n).is_some_and(|f| f.len() == r as usize))
        .collect()
}

/// `sum #orbits / #levels` over squarefree `N <= x` with `r` prime factors.
pub fn average_orbits(table: &LevelTable, x: u64, r: u32) -> Result<BigRational> {
    let levels = squarefree_levels(x, r);
    if levels.is_empty() {
        return Err(Error::invalid(format!("no squarefree levels with {r} prime factors up to {x}")));
    }
    let total: usize = table.require(&levels)?.iter().map(|s| s.len()).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(levels.len())))
}

/// Shortest decimal that reads back as the same double.
pub fn render_decimal(q: &BigRational) -> String {
    format!("{:?}", to_f64(q))
}

/// Half-open ranges `(lo, hi]`, written `lo-hi`; a bare `N` means `(N-1, N]`.
pub fn parse_ranges(s: &str) -> Result<Vec<(u64, u64)>> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::invalid(format!("bad range bound {t:?}")))
    };
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.split_once('-') {
            Some((a, b)) => {
                let (lo, hi) = (num(a)?, num(b)?);
                if lo > hi {
                    return Err(Error::invalid(format!("empty range {t}")));
                }
                Ok((lo, hi))
            }
            None => {
                let n = num(t)?;
                Ok((n.saturating_sub(1), n))
            }
        })
        .collect()
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo + 1..=hi).filter(|&n| is_prime(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub lo: u64,
    pub hi: u64,
    pub levels: usize,
    /// Levels with 2, 3, 4, 5, 6 and at least 7 orbits.
    pub histogram: [usize; 6],
    /// Share of levels with exactly two orbits.
    pub exactly_two: Option<BigRational>,
}

pub fn orbit_count_table(table: &LevelTable, ranges: &[(u64, u64)]) -> Result<Vec<CountRow>> {
    ranges
        .iter()
        .map(|&(lo, hi)| {
            let levels = primes_in(lo, hi);
            let sizes = table.require(&levels)?;
            let mut histogram = [0usize; 6];
            for s in &sizes {
                if s.len() >= 2 {
                    histogram[(s.len() - 2).min(5)] += 1;
                }
            }
            let exactly_two = (!levels.is_empty()).then(|| {
                BigRational::new(BigInt::from(histogram[0]), BigInt::from(levels.len()))
            });
            Ok(CountRow {
                lo,
                hi,
                levels: levels.len(),
                histogram,
                exactly_two,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRow {
    pub lo: u64,
    pub hi: u64,
    /// Number of orbits of size 1 through 7.
    pub counts: [usize; 7],
}

pub fn orbit_size_table(table: &LevelTable, ranges: &[(u64, u64)]) -> Result<Vec<SizeRow>> {
    ranges
        .iter()
        .map(|&(lo, hi)| {
            let mut counts = [0usize; 7];
            for s in table.require(&primes_in(lo, hi))? {
                for &d in s {
                    if (1..=7).contains(&d) {
                        counts[d - 1] += 1;
                    }
                }
            }
            Ok(SizeRow { lo, hi, counts })
        })
        .collect()
}

/// How often each prime is the first with a squarefree cuspidal charpoly.
pub fn min_p_frequency(records: &[SweepRecord]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for r in records.iter().filter(|r| r.dim_new > 0) {
        if let Some(p) = r.min_p {
            *out.entry(p).or_insert(0) += 1;
        }
    }
    out
}

/// `(X, A(X))` at each sample, weight 2 and prime levels.
pub fn figure_data(table: &LevelTable, samples: &[u64]) -> Result<Vec<(u64, BigRational)>> {
    let mut xs = samples.to_vec();
    xs.sort_unstable();
    xs.dedup();
    xs.into_iter()
        .map(|x| Ok((x, average_orbits(table, x, 1)?)))
        .collect()
}

pub fn figure_csv(points: &[(u64, BigRational)]) -> String {
    let mut s = String::from("X,A\n");
    for (x, a) in points {
        let _ = writeln!(s, "{x},{}", render_decimal(a));
    }
    s
}

pub fn render_count_table(rows: &[CountRow]) -> String {
    let mut s = String::from("range,levels,2,3,4,5,6,7+,pct_two\n");
    for r in rows {
        let pct = r
            .exactly_two
            .as_ref()
            .map(|q| format!("{:.2}", 100.0 * to_f64(q)))
            .unwrap_or_default();
        let h = r.histogram.map(|c| c.to_string()).join(",");
        let _ = writeln!(s, "({},{}],{},{h},{pct}", r.lo, r.hi, r.levels);
    }
    s
}

pub fn render_size_table(rows: &[SizeRow]) -> String {
    let mut s = String::from("range,1,2,3,4,5,6,7\n");
    for r in rows {
        let c = r.counts.map(|c| c.to_string()).join(",");
        let _ = writeln!(s, "({},{}],{c}", r.lo, r.hi);
    }
    s
}

pub fn render_min_p(freq: &BTreeMap<u64, usize>) -> String {
    let mut s = String::from("p,count\n");
    for (p, c) in freq {
        let _ = writeln!(s, "{p},{c}");
    }
    s
}
