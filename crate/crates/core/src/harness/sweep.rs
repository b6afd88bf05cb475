//! Parallel, resumable sweep over prime levels.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::{BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;

use rayon::prelude::*;

use super::record::{read_lines, SweepRecord};
use crate::arith::modp::primes_up_to;
use crate::error::{Error, Result};
use crate::orbits::{analyze_level, DEFAULT_P_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub existing: usize,
    pub computed: usize,
}

/// Compute a record for every prime `N <= x_max` missing from `out`.
/// Records are written in increasing level, so the file is the same for any
/// worker count and after any interruption.
pub fn sweep(x_max: u64, jobs: usize, out: &Path) -> Result<SweepSummary> {
    sweep_with(x_max, jobs, out, DEFAULT_P_BOUND)
}

pub fn sweep_with(x_max: u64, jobs: usize, out: &Path, p_bound: u64) -> Result<SweepSummary> {
    if x_max < 2 {
        return Err(Error::invalid("x_max must be at least 2"));
    }
    let mut file = OpenOptions::new()
        .read(true)
        .write(true)
        .create(true)
        .truncate(false)
        .open(out)?;
    let parsed = read_lines::<SweepRecord>(BufReader::new(&mut file))?;
    let mut existing: Vec<SweepRecord> = parsed.items;
    file.set_len(parsed.valid_len)?;
    let needs_newline = parsed.valid_len > 0 && {
        file.seek(SeekFrom::Start(parsed.valid_len - 1))?;
        let mut last = [0u8];
        file.read_exact(&mut last)?;
        last[0] != b'\n'
    };
    file.seek(SeekFrom::End(0))?;
    if needs_newline {
        file.write_all(b"\n")?;
    }

    let have: BTreeSet<u64> = existing.iter().map(|r| r.level).collect();
    if have.len() != existing.len() {
        return Err(Error::Validation("duplicate level in sweep file".into()));
    }
    let missing: Vec<u64> = primes_up_to(x_max)
        .into_iter()
        .filter(|n| !have.contains(n))
        .collect();
    let summary = SweepSummary {
        existing: existing.len(),
        computed: missing.len(),
    };
    if missing.is_empty() {
        return Ok(summary);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::internal(e.to_string()))?;
    let max_have = have.iter().next_back().copied().unwrap_or(0);
    let append = missing[0] > max_have;
    let chunk = (4 * jobs).max(8);
    for levels in missing.chunks(chunk) {
        let recs: Vec<SweepRecord> = pool.install(|| {
            levels
                .par_iter()
                .map(|&n| analyze_level(n, p_bound).map(SweepRecord::from))
                .collect::<Result<_>>()
        })?;
        if append {
            let mut buf = String::new();
            for r in &recs {
                buf.push_str(&serde_json::to_string(r).map_err(|e| Error::internal(e.to_string()))?);
                buf.push('\n');
            }
            file.write_all(buf.as_bytes())?;
            file.flush()?;
        } else {
            existing.extend(recs);
        }
    }
    if !append {
        existing.sort_by_key(|r| r.level);
        let tmp = out.with_extension("tmp");
        let mut buf = String::new();
        for r in &existing {
            buf.push_str(&serde_json::to_string(r).map_err(|e| Error::internal(e.to_string()))?);
            buf.push('\n');
        }
        std::fs::write(&tmp, buf)?;
        std::fs::rename(&tmp, out)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::record::load;

    #[test]
    fn small_sweep_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.jsonl");
        let s = sweep(13, 1, &path).unwrap();
        assert_eq!(s.computed, 6);
        let recs: Vec<SweepRecord> = load(&path).unwrap();
        let levels: Vec<u64> = recs.iter().map(|r| r.level).collect();
        assert_eq!(levels, vec![2, 3, 5, 7, 11, 13]);
        let counts: Vec<usize> = recs.iter().map(|r| r.orbit_count()).collect();
        assert_eq!(counts, vec![0, 0, 0, 0, 1, 0]);
        let before = std::fs::read(&path).unwrap();
        let again = sweep(13, 1, &path).unwrap();
        assert_eq!(again.computed, 0);
        assert_eq!(std::fs::read(&path).unwrap(), before);
    }

    #[test]
    fn deterministic_across_jobs_and_interruptions() {
        let dir = tempfile::tempdir().unwrap();
        let one = dir.path().join("one.jsonl");
        let four = dir.path().join("four.jsonl");
        sweep(200, 1, &one).unwrap();
        sweep(200, 4, &four).unwrap();
        let full = std::fs::read(&one).unwrap();
        assert_eq!(full, std::fs::read(&four).unwrap());

        // cut mid-line, then resume
        let torn = dir.path().join("torn.jsonl");
        std::fs::write(&torn, &full[..full.len() * 2 / 3]).unwrap();
        sweep(200, 2, &torn).unwrap();
        assert_eq!(std::fs::read(&torn).unwrap(), full);

        // shorter prefix, then extend
        let part = dir.path().join("part.jsonl");
        sweep(50, 1, &part).unwrap();
        sweep(200, 3, &part).unwrap();
        assert_eq!(std::fs::read(&part).unwrap(), full);
    }

    #[test]
    fn corrupt_record_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        sweep(13, 1, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines[2] = "{garbage";
        std::fs::write(&path, lines.join("\n") + "\n").unwrap();
        match sweep(13, 1, &path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
