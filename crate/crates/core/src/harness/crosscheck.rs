//! Comparison of sweep output with independently computed newform data.

use std::collections::BTreeMap;

use super::ingest::NewformRecord;
use super::record::SweepRecord;
use super::stats::LevelTable;
use crate::arith::modp::primes_up_to;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub level: u64,
    pub ours: (Vec<usize>, Vec<usize>),
    pub theirs: (Vec<usize>, Vec<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub levels: usize,
    pub agreeing: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Split ingested orbits by their Atkin-Lehner eigenvalue at the level.
/// Eigenvalue `-1` (root number `+1`) is the plus side. Orbits without a
/// recorded sign land on neither side.
fn ingested_sides(records: &[NewformRecord]) -> BTreeMap<u64, (Vec<usize>, Vec<usize>)> {
    let mut map: BTreeMap<u64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.weight == 2) {
        let e = map.entry(r.level).or_default();
        match r.sign_at(r.level) {
            Some(-1) => e.0.push(r.orbit_size),
            Some(_) => e.1.push(r.orbit_size),
            None => {}
        }
    }
    for (a, b) in map.values_mut() {
        a.sort_unstable();
        b.sort_unstable();
    }
    map
}

/// Compare orbit multisets, and the Atkin-Lehner split where signs are
/// available, at every prime level up to `x_max`.
pub fn crosscheck(
    brandt: &[SweepRecord],
    ingested: &[NewformRecord],
    x_max: u64,
) -> Result<CrosscheckReport> {
    let levels = primes_up_to(x_max);
    let ours_t = LevelTable::from_sweep(brandt);
    let theirs_t = LevelTable::from_ingested(ingested, 2);
    let mut gaps: Vec<u64> = levels
        .iter()
        .copied()
        .filter(|&n| ours_t.get(n).is_none() || theirs_t.get(n).is_none())
        .collect();
    gaps.dedup();
    if !gaps.is_empty() {
        return Err(Error::CoverageGap(gaps));
    }
    let by_level: BTreeMap<u64, &SweepRecord> = brandt.iter().map(|r| (r.level, r)).collect();
    let sides = ingested_sides(ingested);
    let mut report = CrosscheckReport {
        levels: levels.len(),
        ..Default::default()
    };
    for n in levels {
        let rec = by_level[&n];
        let theirs_all = theirs_t.get(n).unwrap_or(&[]).to_vec();
        let ours = (rec.orbit_sizes_plus.clone(), rec.orbit_sizes_minus.clone());
        let theirs = sides.get(&n).cloned().unwrap_or_default();
        let signed = theirs.0.len() + theirs.1.len() == theirs_all.len();
        let ok = rec.orbit_sizes == theirs_all && (!signed || ours == theirs);
        if ok {
            report.agreeing += 1;
        } else {
            report.mismatches.push(Mismatch {
                level: n,
                ours,
                theirs: if signed { theirs } else { (theirs_all, Vec::new()) },
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ingest::parse_records;
    use crate::orbits::analyze_level;

    fn sweep_to(x: u64) -> Vec<SweepRecord> {
        primes_up_to(x)
            .into_iter()
            .map(|n| SweepRecord::from(analyze_level(n, 97).unwrap()))
            .collect()
    }

    fn fixture() -> Vec<NewformRecord> {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/newforms_k2_prime_le500.jsonl");
        crate::harness::ingest::ingest_records(std::path::Path::new(path)).unwrap()
    }

    #[test]
    fn agrees_on_small_levels() {
        let theirs: Vec<NewformRecord> = fixture().into_iter().filter(|r| r.level <= 23).collect();
        let ours = sweep_to(23);
        let rep = crosscheck(&ours, &theirs, 23).unwrap();
        assert_eq!(rep.levels, 9);
        assert!(rep.is_clean(), "{rep:?}");
        let at = |n: u64| ours.iter().find(|r| r.level == n).unwrap().orbit_sizes.clone();
        assert_eq!(at(11), vec![1]);
        assert_eq!(at(23), vec![2]);
    }

    #[test]
    fn wrong_sign_is_a_mismatch() {
        let text = r#"{"level":11,"weight":2,"dim":1,"atkin_lehner":[[11,1]]}"#;
        let theirs = parse_records(text.as_bytes()).unwrap();
        let rep = crosscheck(&sweep_to(11), &theirs, 11).unwrap();
        assert_eq!(rep.mismatches.len(), 1);
        assert_eq!(rep.mismatches[0].level, 11);
    }

    #[test]
    fn disjoint_ranges_are_a_gap() {
        let text = r#"{"level":11,"weight":2,"dim":1,"atkin_lehner":[[11,-1]]}"#;
        let theirs = parse_records(text.as_bytes()).unwrap();
        match crosscheck(&sweep_to(13), &theirs, 13) {
            Err(Error::CoverageGap(g)) => assert_eq!(g, vec![13]),
            other => panic!("unexpected {other:?}"),
        }
        match crosscheck(&sweep_to(7), &theirs, 11) {
            Err(Error::CoverageGap(g)) => assert_eq!(g, vec![11]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fixture_agreement() {
        let rep = crosscheck(&sweep_to(200), &fixture(), 200).unwrap();
        assert!(rep.is_clean(), "{:?}", rep.mismatches);
    }
}
