use std::time::Instant;

use recon_core::combin::binomial;
use recon_core::overlap::recon_overlap_with;
use recon_core::{recon_brute, recon_greedy, Engine, Limits, OverlapOptions, StringSet};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::generate::{gen_random_set, trial_seed};

/// One engine run on one trial. Fields measured by a failed run are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub engine: Engine,
    pub runtime_ms: Option<f64>,
    pub extra_strings: Option<usize>,
    pub greedy_checks: Option<u64>,
    /// `runtime_ms / C(n, k-1)`.
    pub normalized_runtime: Option<f64>,
    /// The heuristic `m >= k * 2^k` for the no-information regime.
    pub noinfo_flag: bool,
    /// Why the engine failed; not part of the CSV.
    pub error: Option<String>,
}

/// What a timed engine run produced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub runtime_ms: f64,
    pub extra_strings: usize,
    pub greedy_checks: Option<u64>,
}

pub fn noinfo_flag(m: usize, k: usize) -> bool {
    k < 64 && (m as u128) >= (k as u128) << k
}

/// Runs one engine to completion. The clock covers the engine call only,
/// which for the overlap engine includes column ordering.
pub fn time_engine(set: &StringSet, k: usize, engine: Engine, limits: Limits) -> recon_core::Result<Timing> {
    let start = Instant::now();
    let (extra_strings, greedy_checks) = match engine {
        Engine::Brute => (recon_brute(set, k, limits)?.extras, None),
        Engine::Greedy => {
            let (report, trace) = recon_greedy(set, k, None)?;
            (report.extras, Some(trace.checks))
        }
        Engine::Overlap => {
            let opts = OverlapOptions { limits, ..OverlapOptions::default() };
            (recon_overlap_with(set, k, &opts)?.extras, None)
        }
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Timing { runtime_ms, extra_strings, greedy_checks })
}

/// Generates the trial's dataset once and runs every engine on it, in the
/// order given.
pub fn run_cell(
    n: usize,
    m: usize,
    k: usize,
    trial: usize,
    seed: u64,
    engines: &[Engine],
    limits: Limits,
) -> Result<Vec<BenchRecord>> {
    let set = gen_random_set(n, m, seed)?;
    let norm = binomial(n, k - 1) as f64;
    let records = engines
        .iter()
        .map(|&engine| {
            let mut rec = BenchRecord {
                n,
                m,
                k,
                trial,
                seed,
                engine,
                runtime_ms: None,
                extra_strings: None,
                greedy_checks: None,
                normalized_runtime: None,
                noinfo_flag: noinfo_flag(m, k),
                error: None,
            };
            match time_engine(&set, k, engine, limits) {
                Ok(t) => {
                    rec.runtime_ms = Some(t.runtime_ms);
                    rec.extra_strings = Some(t.extra_strings);
                    rec.greedy_checks = t.greedy_checks;
                    rec.normalized_runtime = Some(t.runtime_ms / norm);
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect();
    Ok(records)
}

/// Runs the whole grid, handing records to `sink` in `(n, m, k, trial,
/// engine)` order. Engine failures (such as the brute-force size guard)
/// become records with empty measurements rather than errors.
pub fn run_experiment<F>(cfg: &ExperimentConfig, limits: Limits, mut sink: F) -> Result<()>
where
    F: FnMut(BenchRecord) -> Result<()>,
{
    cfg.validate()?;
    let engines = cfg.engine_order();
    for (n, m, k) in cfg.cells() {
        for trial in 0..cfg.trials_for(m) {
            let seed = trial_seed(cfg.seed, n, m, trial);
            for rec in run_cell(n, m, k, trial, seed, &engines, limits)? {
                sink(rec)?;
            }
        }
    }
    Ok(())
}
