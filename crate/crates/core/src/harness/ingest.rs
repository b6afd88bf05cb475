//! Newform records exported from an external database, one JSON object per
//! line: `level`, `weight`, `dim` (orbit size), `atkin_lehner` (pairs
//! `[p, sign]`), optionally `label` and `hecke_orbit`.

use std::collections::{BTreeMap, HashSet};
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::modp::squarefree_factors;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewformRecord {
    #[serde(default)]
    pub label: Option<String>,
    pub level: u64,
    pub weight: u32,
    #[serde(default)]
    pub hecke_orbit: Option<u32>,
    #[serde(rename = "dim")]
    pub orbit_size: usize,
    #[serde(rename = "atkin_lehner", default)]
    pub atkin_lehner_signs: Vec<(u64, i32)>,
}

impl NewformRecord {
    /// Orbit index from `hecke_orbit`, else from the letter suffix of the label.
    pub fn orbit_index(&self) -> Option<u32> {
        if let Some(i) = self.hecke_orbit {
            return Some(i);
        }
        let suffix = self.label.as_ref()?.rsplit('.').next()?;
        if suffix.is_empty() || !suffix.bytes().all(|b| b.is_ascii_lowercase()) {
            return None;
        }
        Some(suffix.bytes().fold(0u32, |acc, b| acc * 26 + (b - b'a' + 1) as u32))
    }

    /// Atkin-Lehner eigenvalue at `p`, if recorded.
    pub fn sign_at(&self, p: u64) -> Option<i32> {
        self.atkin_lehner_signs.iter().find(|&&(q, _)| q == p).map(|&(_, s)| s)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.level == 0 || squarefree_factors(self.level).is_none() {
            return Err(format!("level {} is not squarefree", self.level));
        }
        if self.weight == 0 || self.weight % 2 == 1 {
            return Err(format!("weight {} is not even", self.weight));
        }
        if self.orbit_size == 0 {
            return Err("orbit size must be positive".into());
        }
        if self.atkin_lehner_signs.iter().any(|&(_, s)| s != 1 && s != -1) {
            return Err("Atkin-Lehner signs must be +1 or -1".into());
        }
        Ok(())
    }
}

pub fn parse_records(reader: impl BufRead) -> Result<Vec<NewformRecord>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rec: NewformRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        rec.validate().map_err(|message| Error::Parse {
            line: lineno,
            message,
        })?;
        if let Some(idx) = rec.orbit_index() {
            if !seen.insert((rec.level, rec.weight, idx)) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!(
                        "duplicate orbit {idx} at level {} weight {}",
                        rec.level, rec.weight
                    ),
                });
            }
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn ingest_records(path: &Path) -> Result<Vec<NewformRecord>> {
    let f = std::fs::File::open(path)?;
    parse_records(std::io::BufReader::new(f))
}

/// Orbit sizes per level for one weight, sorted.
pub fn orbit_sizes_by_level(records: &[NewformRecord], weight: u32) -> BTreeMap<u64, Vec<usize>> {
    let mut map: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.weight == weight) {
        map.entry(r.level).or_default().push(r.orbit_size);
    }
    for v in map.values_mut() {
        v.sort_unstable();
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_records() {
        let text = r#"{"level":11,"weight":2,"dim":1,"atkin_lehner":[[11,-1]],"extra":5}
{"level":23,"weight":2,"dim":2,"atkin_lehner":[[23,-1]]}
{"level":29,"weight":2,"dim":2,"atkin_lehner":[[29,-1]]}
"#;
        let recs = parse_records(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[1].orbit_size, 2);
        assert_eq!(recs[0].sign_at(11), Some(-1));
    }

    #[test]
    fn rejects_bad_lines() {
        let bad = |t: &str| match parse_records(t.as_bytes()) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("unexpected {other:?}"),
        };
        let ok = r#"{"level":11,"weight":2,"dim":1,"atkin_lehner":[]}"#;
        assert_eq!(bad(&format!("{ok}\n{{oops\n")), 2);
        assert_eq!(bad(r#"{"level":12,"weight":2,"dim":1}"#), 1);
        assert_eq!(bad(r#"{"level":11,"weight":3,"dim":1}"#), 1);
        assert_eq!(bad(r#"{"level":11,"weight":2,"dim":0}"#), 1);
        let dup = r#"{"label":"11.2.a.a","level":11,"weight":2,"dim":1}"#;
        assert_eq!(bad(&format!("{dup}\n{dup}\n")), 2);
        let dup2 = r#"{"level":11,"weight":2,"hecke_orbit":1,"dim":1}"#;
        assert_eq!(bad(&format!("{dup2}\n{dup2}\n")), 2);
    }

    #[test]
    fn label_index() {
        let mut r = parse_records(r#"{"label":"1000.2.a.ab","level":1001,"weight":2,"dim":1}"#.as_bytes())
            .unwrap()
            .remove(0);
        assert_eq!(r.orbit_index(), Some(28));
        r.label = None;
        assert_eq!(r.orbit_index(), None);
    }
}
