use serde::Deserialize;

use recon_core::Engine;

use crate::error::{BenchError, Result};

/// A grid of `(n, m, k)` cells, each run for a number of seeded trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub ns: Vec<usize>,
    pub ms: Vec<usize>,
    pub ks: Vec<usize>,
    /// Trials per cell; `None` means 30, or 10 once `m >= 500`.
    pub trials: Option<usize>,
    pub seed: u64,
    pub engines: Vec<Engine>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntList {
    One(usize),
    Many(Vec<usize>),
    Spec(String),
}

impl IntList {
    fn resolve(self) -> Result<Vec<usize>> {
        match self {
            IntList::One(v) => Ok(vec![v]),
            IntList::Many(v) => Ok(v),
            IntList::Spec(s) => parse_int_list(&s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: IntList,
    m: IntList,
    k: IntList,
    trials: Option<usize>,
    #[serde(default)]
    seed: u64,
    engines: Option<Vec<String>>,
}

/// Parses `"5"`, `"10-20"` and comma-separated mixes such as `"1-4,8"`.
pub fn parse_int_list(text: &str) -> Result<Vec<usize>> {
    let bad = |part: &str| BenchError::Config(format!("bad integer list entry {part:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad(part))?;
                let hi: usize = hi.trim().parse().map_err(|_| bad(part))?;
                if lo > hi {
                    return Err(bad(part));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    if out.is_empty() {
        return Err(BenchError::Config(format!("empty integer list {text:?}")));
    }
    Ok(out)
}

impl ExperimentConfig {
    /// A config with the default trial rule and all three engines.
    pub fn new(ns: Vec<usize>, ms: Vec<usize>, ks: Vec<usize>, seed: u64) -> Self {
        ExperimentConfig { ns, ms, ks, trials: None, seed, engines: Engine::ALL.to_vec() }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        let engines = match raw.engines {
            Some(names) => names.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?,
            None => Engine::ALL.to_vec(),
        };
        let cfg = ExperimentConfig {
            ns: raw.n.resolve()?,
            ms: raw.m.resolve()?,
            ks: raw.k.resolve()?,
            trials: raw.trials,
            seed: raw.seed,
            engines,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sorts and dedups every axis and checks that each cell is feasible.
    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(BenchError::Config(msg));
        if self.ns.is_empty() || self.ms.is_empty() || self.ks.is_empty() || self.engines.is_empty() {
            return err("n, m, k and engines must be non-empty".into());
        }
        if self.trials == Some(0) {
            return err("trials must be at least 1".into());
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n == 0 || n > 64) {
            return err(format!("n = {n} outside 1..=64"));
        }
        if self.ks.contains(&0) {
            return err("k must be at least 1".into());
        }
        for &n in &self.ns {
            if let Some(&m) = self.ms.iter().find(|&&m| m == 0 || (n < 64 && m as u64 > 1u64 << n)) {
                return err(format!("m = {m} distinct strings impossible at n = {n}"));
            }
        }
        if self.cells().next().is_none() {
            return err("no cell has k <= n".into());
        }
        Ok(())
    }

    pub fn trials_for(&self, m: usize) -> usize {
        self.trials.unwrap_or(if m >= 500 { 10 } else { 30 })
    }

    /// Cells in ascending `(n, m, k)` order; `k > n` is skipped.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let axis = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (ns, ms, ks) = (axis(&self.ns), axis(&self.ms), axis(&self.ks));
        ns.into_iter().flat_map(move |n| {
            let ks = ks.clone();
            ms.clone().into_iter().flat_map(move |m| ks.clone().into_iter().filter(move |&k| k <= n).map(move |k| (n, m, k)))
        })
    }

    /// Engines in canonical (name) order without repeats.
    pub fn engine_order(&self) -> Vec<Engine> {
        let mut e = self.engines.clone();
        e.sort();
        e.dedup();
        e
    }
}
