//! Command line front end: per-level reports, sweeps, tables, figure data,
//! level averages from external data, and the random-polynomial model.

use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use levelorbits::harness::{self, LevelTable, NewformRecord, SweepRecord};
use levelorbits::orbits::{analyze_level, DEFAULT_P_BOUND};
use levelorbits::{heuristics, Error, Result};

#[derive(Parser)]
#[command(name = "levelorbits", version, about = "Galois orbits of weight-2 newforms of prime level")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit report for a single prime level.
    Orbits {
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = DEFAULT_P_BOUND)]
        p_bound: u64,
    },
    /// Compute records for every prime level up to a bound, resuming a partial file.
    Sweep {
        #[arg(long)]
        xmax: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Orbit count, orbit size or smallest-prime tables from a sweep file.
    Tables {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        table: TableKind,
        /// Comma-separated ranges `lo-hi` meaning (lo, hi], or single levels.
        #[arg(long, default_value = "")]
        ranges: String,
    },
    /// Average orbit counts at sample points, written as CSV.
    Figure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        samples: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Average number of orbits over squarefree levels with `r` prime factors.
    Average {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        xmax: u64,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Validate an exported newform file and summarise it.
    Ingest {
        #[arg(long)]
        file: PathBuf,
    },
    /// Compare a sweep file with exported newform data.
    Crosscheck {
        #[arg(long)]
        brandt: PathBuf,
        #[arg(long)]
        lmfdb: PathBuf,
        #[arg(long)]
        xmax: u64,
    },
    /// Evaluate the random-polynomial model.
    Model(ModelArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Counts,
    Sizes,
    Minp,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("direct").args(["d", "t"]).multiple(true))]
#[command(group = clap::ArgGroup::new("level_mode").args(["weight", "level", "r"]).multiple(true).conflicts_with("direct"))]
struct ModelArgs {
    #[arg(long, requires = "t")]
    d: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: u64,
    /// A positive rational such as `7/2` or `3.5`.
    #[arg(long, requires = "d")]
    t: Option<String>,
    #[arg(long, requires_all = ["level", "r"])]
    weight: Option<u64>,
    #[arg(long, requires_all = ["weight", "r"])]
    level: Option<u64>,
    #[arg(long, requires_all = ["weight", "level"])]
    r: Option<u32>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a rational"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
        return Ok(BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32)));
    }
    BigRational::from_str(s).map_err(|_| bad())
}

fn show(q: &BigRational) -> String {
    format!("{} ({q})", harness::render_decimal(q))
}

fn is_sweep_file(path: &Path) -> Result<bool> {
    let f = std::fs::File::open(path)?;
    for line in std::io::BufReader::new(f).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        return Ok(serde_json::from_str::<serde_json::Value>(&line)
            .map(|v| v.get("orbit_sizes").is_some())
            .unwrap_or(false));
    }
    Ok(false)
}

fn load_sweep(path: &Path) -> Result<Vec<SweepRecord>> {
    harness::load(path)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Orbits { level, p_bound } => {
            let rep = analyze_level(level, p_bound)?;
            let rec = SweepRecord::from(rep);
            println!("{}", serde_json::to_string(&rec).map_err(|e| Error::Internal(e.to_string()))?);
        }
        Command::Sweep { xmax, jobs, out } => {
            let s = harness::sweep(xmax, jobs, &out)?;
            eprintln!("{} existing, {} computed", s.existing, s.computed);
        }
        Command::Tables {
            input,
            table,
            ranges,
        } => {
            let recs = load_sweep(&input)?;
            let ranges = harness::parse_ranges(&ranges)?;
            let t = LevelTable::from_sweep(&recs);
            let text = match table {
                TableKind::Counts => harness::render_count_table(&harness::orbit_count_table(&t, &ranges)?),
                TableKind::Sizes => harness::render_size_table(&harness::orbit_size_table(&t, &ranges)?),
                TableKind::Minp => {
                    let ok: Vec<SweepRecord> = recs
                        .into_iter()
                        .filter(|r| r.status == levelorbits::orbits::Status::Ok)
                        .collect();
                    harness::render_min_p(&harness::min_p_frequency(&ok))
                }
            };
            print!("{text}");
        }
        Command::Figure {
            input,
            samples,
            out,
        } => {
            let t = LevelTable::from_sweep(&load_sweep(&input)?);
            let csv = harness::figure_csv(&harness::figure_data(&t, &samples)?);
            std::fs::write(&out, csv)?;
        }
        Command::Average {
            input,
            xmax,
            weight,
            r,
        } => {
            let table = if is_sweep_file(&input)? {
                if weight != 2 {
                    return Err(Error::InvalidInput("sweep files hold weight 2 only".into()));
                }
                LevelTable::from_sweep(&load_sweep(&input)?)
            } else {
                LevelTable::from_ingested(&harness::ingest_records(&input)?, weight)
            };
            println!("{}", show(&harness::average_orbits(&table, xmax, r)?));
        }
        Command::Ingest { file } => {
            let recs: Vec<NewformRecord> = harness::ingest_records(&file)?;
            let mut weights: Vec<u32> = recs.iter().map(|r| r.weight).collect();
            weights.sort_unstable();
            weights.dedup();
            for k in weights {
                let by = harness::orbit_sizes_by_level(&recs, k);
                let orbits: usize = by.values().map(Vec::len).sum();
                let max = by.keys().next_back().copied().unwrap_or(0);
                println!("weight {k}: {orbits} orbits at {} levels up to {max}", by.len());
            }
        }
        Command::Crosscheck {
            brandt,
            lmfdb,
            xmax,
        } => {
            let ours = load_sweep(&brandt)?;
            let theirs = harness::ingest_records(&lmfdb)?;
            let rep = harness::crosscheck(&ours, &theirs, xmax)?;
            for m in &rep.mismatches {
                println!(
                    "mismatch at {}: ours {:?} / {:?}, theirs {:?} / {:?}",
                    m.level, m.ours.0, m.ours.1, m.theirs.0, m.theirs.1
                );
            }
            println!("{} of {} levels agree", rep.agreeing, rep.levels);
            if !rep.is_clean() {
                return Err(Error::Validation(format!("{} mismatching levels", rep.mismatches.len())));
            }
        }
        Command::Model(m) => match (m.d, m.t, m.weight, m.level, m.r) {
            (Some(d), Some(t), ..) => {
                let t = parse_rational(&t)?;
                println!("split_prob {}", show(&heuristics::split_prob(d, m.e, &t)?));
                println!("bound {}", show(&heuristics::split_prob_bound(d, m.e, &t)?));
            }
            (_, _, Some(k), Some(n), Some(r)) => {
                let d = heuristics::model_dimension(k, n, r)?;
                println!("dimension {d}");
                println!("t {}", show(&heuristics::model_t(k)));
                println!("split_prob {}", show(&heuristics::predicted_orbit_profile(k, n, r, m.e)?));
            }
            _ => {
                return Err(Error::InvalidInput(
                    "model needs --d and --t, or --weight, --level and --r".into(),
                ))
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
