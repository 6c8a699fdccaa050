//! Seeded random datasets, a timing harness over the reconstruction engines
//! and CSV output for the scaling experiments.
//!
//! Every trial derives its own seed from the master seed, so records do not
//! depend on which cells were run before them.

mod config;
mod error;
mod generate;
mod harness;
mod output;

pub use config::{parse_int_list, ExperimentConfig};
pub use error::{BenchError, Result};
pub use generate::{gen_random_set, mix64, trial_seed};
pub use harness::{noinfo_flag, run_cell, run_experiment, time_engine, BenchRecord, Timing};
pub use output::{
    cross_engine_mismatches, read_csv, strip_timing, summarize, write_summary, CsvSink, Summary,
    CSV_HEADER, TIMING_COLUMNS,
};
