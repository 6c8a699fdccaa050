//! Point of perfect reconstruction over a choice of engines.

use std::fmt;
use std::str::FromStr;

use crate::error::{input_err, Error, Result};
use crate::greedy::recon_greedy;
use crate::overlap::{decide_perfect_at_k_with, OverlapOptions};
use crate::recon::{check_k, is_1_reconstructible, recon_brute, Limits};
use crate::strings::StringSet;
use crate::twosat::is_2_reconstructible;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    Brute,
    Greedy,
    Overlap,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Brute, Engine::Greedy, Engine::Overlap];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Greedy => "greedy",
            Engine::Overlap => "overlap",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| input_err!("unknown engine {s:?} (expected brute, greedy or overlap)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Search {
    /// Try `k = 1, 2, ...` in turn.
    #[default]
    Ascend,
    /// Bisect over `1..=n`; valid because `Recon_k(S) = S` is upward closed in `k`.
    Bisect,
}

/// `Recon_k(S) = S`, using the linear test at `k = 1`, 2-SAT at `k = 2` for
/// binary sets, and `engine` otherwise.
pub fn decide_perfect_at(set: &StringSet, k: usize, engine: Engine, limits: Limits) -> Result<bool> {
    check_k(set, k)?;
    if k == set.n() {
        return Ok(true);
    }
    if k == 1 {
        return Ok(is_1_reconstructible(set));
    }
    if k == 2 && set.is_binary() {
        return is_2_reconstructible(set);
    }
    match engine {
        Engine::Brute => Ok(recon_brute(set, k, limits)?.extras == 0),
        Engine::Greedy => Ok(recon_greedy(set, k, None)?.0.extras == 0),
        Engine::Overlap => decide_perfect_at_k_with(set, k, &OverlapOptions { limits, ..Default::default() }),
    }
}

/// Least `k` with `Recon_k(S) = S`.
pub fn perfect_point(set: &StringSet, engine: Engine, search: Search, limits: Limits) -> Result<usize> {
    let n = set.n();
    match search {
        Search::Ascend => {
            for k in 1..n {
                if decide_perfect_at(set, k, engine, limits)? {
                    return Ok(k);
                }
            }
            Ok(n)
        }
        Search::Bisect => {
            let (mut lo, mut hi) = (1, n);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if decide_perfect_at(set, mid, engine, limits)? {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(lo)
        }
    }
}
