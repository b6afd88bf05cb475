//! Line-delimited JSON records and a reader that tolerates a torn final line.

use std::io::BufRead;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{OrbitReport, SmallFactor, Status};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A persisted [`OrbitReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub level: u64,
    pub weight: u32,
    pub dim_new: usize,
    pub orbit_sizes: Vec<usize>,
    pub orbit_sizes_plus: Vec<usize>,
    pub orbit_sizes_minus: Vec<usize>,
    pub min_p: Option<u64>,
    pub tried_primes: Vec<u64>,
    pub small_galois_labels: Vec<SmallFactor>,
    pub status: Status,
    pub engine_version: String,
}

impl SweepRecord {
    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }
}

impl From<OrbitReport> for SweepRecord {
    fn from(r: OrbitReport) -> Self {
        SweepRecord {
            level: r.level,
            weight: 2,
            dim_new: r.dim_new,
            orbit_sizes: r.orbit_sizes,
            orbit_sizes_plus: r.orbit_sizes_plus,
            orbit_sizes_minus: r.orbit_sizes_minus,
            min_p: r.min_p,
            tried_primes: r.tried_primes,
            small_galois_labels: r.small_galois_labels,
            status: r.status,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }
}

/// Parsed lines plus the byte length of the valid prefix. A final line that
/// is unterminated and does not parse is dropped; any other bad line is an
/// error carrying its 1-based line number.
pub struct Lines<T> {
    pub items: Vec<T>,
    pub valid_len: u64,
}

pub fn read_lines<T: DeserializeOwned>(mut reader: impl BufRead) -> Result<Lines<T>> {
    let mut items = Vec::new();
    let mut valid_len = 0u64;
    let mut lineno = 0;
    let mut buf = Vec::new();
    loop {
        buf.clear();
        let n = reader.read_until(b'\n', &mut buf)?;
        if n == 0 {
            break;
        }
        lineno += 1;
        let terminated = buf.last() == Some(&b'\n');
        let text = String::from_utf8_lossy(&buf);
        if !text.trim().is_empty() {
            if let Err(e) = serde_json::from_str::<T>(&text).map(|v| items.push(v)) {
                if terminated {
                    return Err(Error::Parse {
                        line: lineno,
                        message: e.to_string(),
                    });
                }
                break;
            }
        }
        valid_len += n as u64;
    }
    Ok(Lines { items, valid_len })
}

/// Strictly read a whole file; only a torn final line is tolerated.
pub fn load<T: DeserializeOwned>(path: &std::path::Path) -> Result<Vec<T>> {
    let f = std::fs::File::open(path)?;
    Ok(read_lines(std::io::BufReader::new(f))?.items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Row {
        a: u32,
    }

    #[test]
    fn torn_final_line_is_dropped() {
        let text = b"{\"a\":1}\n{\"a\":2}\n{\"a\":";
        let r: Lines<Row> = read_lines(&text[..]).unwrap();
        assert_eq!(r.items, vec![Row { a: 1 }, Row { a: 2 }]);
        assert_eq!(r.valid_len, 16);
    }

    #[test]
    fn corrupt_inner_line_reports_number() {
        let text = b"{\"a\":1}\nnot json\n{\"a\":3}\n";
        match read_lines::<Row>(&text[..]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {:?}", other.map(|l| l.items)),
        }
    }

    #[test]
    fn unterminated_but_complete_line_is_kept() {
        let text = b"{\"a\":1}\n{\"a\":2}";
        let r: Lines<Row> = read_lines(&text[..]).unwrap();
        assert_eq!(r.items.len(), 2);
        assert_eq!(r.valid_len, 15);
    }

    #[test]
    fn record_round_trip() {
        let rep = crate::orbits::analyze_level(251, 97).unwrap();
        let rec = SweepRecord::from(rep);
        let line = serde_json::to_string(&rec).unwrap();
        assert!(!line.contains('\n'));
        let back: SweepRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }
}
