//! Sweeps over prime levels, persisted records, external data and summaries.

pub mod crosscheck;
pub mod ingest;
pub mod record;
pub mod stats;
pub mod sweep;

pub use crosscheck::{crosscheck, CrosscheckReport, Mismatch};
pub use ingest::{ingest_records, orbit_sizes_by_level, parse_records, NewformRecord};
pub use record::{load, read_lines, SweepRecord, ENGINE_VERSION};
pub use stats::{
    average_orbits, figure_csv, figure_data, min_p_frequency, orbit_count_table,
    orbit_size_table, parse_ranges, render_count_table, render_decimal, render_min_p,
    render_size_table, squarefree_levels, CountRow, LevelTable, SizeRow,
};
pub use sweep::{sweep, sweep_with, SweepSummary};
