use std::ops::ControlFlow;

use crate::error::Result;
use crate::hitting_set::{hittable_within, HittingSetInstance};
use crate::recon::{check_k, is_1_reconstructible, recon_product, Limits, ReconReport};
use crate::strings::{unpack_binary, StringSet, Word};

use super::counts::{cycle_counts, CycleCountTable};
use super::cycles::{decode_cycle, for_each_cycle, for_each_cycle_packed};
use super::graph::{build_graph, OverlapGraph};
use super::ordering::{order_columns, ColumnOrdering};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrderingMode {
    /// Greedy similarity chain.
    #[default]
    Greedy,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverlapOptions {
    pub ordering: OrderingMode,
    pub prune: bool,
    /// Only used for the `k = 1` product fast path.
    pub limits: Limits,
}

impl Default for OverlapOptions {
    fn default() -> Self {
        OverlapOptions { ordering: OrderingMode::Greedy, prune: true, limits: Limits::default() }
    }
}

/// Work counters for one pipeline run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OverlapStats {
    pub nodes: usize,
    pub edges: usize,
    pub pruned_nodes: usize,
    /// Cycles enumerated after pruning.
    pub cycles: usize,
    /// Hitting-set checks run on candidates or, for binary sets, on
    /// partial strings during the walk.
    pub verified: usize,
    /// Partial strings abandoned because a window already excluded them.
    pub cut_prefixes: usize,
}

/// Drops nodes lying on exactly one cycle (that cycle is an input string),
/// then nodes left on no cycle at all.
///
/// Only the first pass removes count-1 nodes: once nodes are gone a count of
/// 1 no longer implies the cycle is an input string.
pub fn prune_unique(g: &OverlapGraph, counts: &CycleCountTable) -> OverlapGraph {
    let keep: Vec<bool> = counts
        .counts
        .iter()
        .zip(&counts.overflow)
        .map(|(&c, &o)| o || c != 1)
        .collect();
    let pruned = g.retain_nodes(&keep);
    let after = cycle_counts(&pruned);
    let live: Vec<bool> = after.counts.iter().map(|&c| c > 0).collect();
    if live.iter().all(|&l| l) {
        pruned
    } else {
        pruned.retain_nodes(&live)
    }
}

fn ordering_for(set: &StringSet, mode: OrderingMode) -> ColumnOrdering {
    match mode {
        OrderingMode::Greedy => order_columns(set),
        OrderingMode::Identity => ColumnOrdering::identity(set),
    }
}

/// Whether a candidate outside `S` survives every `k`-window: no hitting set
/// of size `<= k` over its disagreement sets.
fn survives_all_windows(set: &StringSet, word: &[u8], k: usize) -> bool {
    let h = HittingSetInstance::new(set.n(), set.disagreements(word)).expect("masks fit the universe");
    h.solve_fpt(k).is_none()
}

/// Streams the members of `Recon_k(S) \ S` for `2 <= k <= n-1`.
fn extras<F>(set: &StringSet, k: usize, opts: &OverlapOptions, stats: &mut OverlapStats, mut emit: F) -> Result<()>
where
    F: FnMut(Word) -> ControlFlow<()>,
{
    let ord = ordering_for(set, opts.ordering);
    let mut graph = build_graph(set, k, &ord)?;
    stats.nodes = graph.node_count();
    stats.edges = graph.edge_count();
    if opts.prune {
        let counts = cycle_counts(&graph);
        graph = prune_unique(&graph, &counts);
        stats.pruned_nodes = stats.nodes - graph.node_count();
    }
    // cyclic windows are all windows when k = n-1
    let complete = k + 1 == set.n();
    if let Some(packed) = set.packed() {
        let mut rows = packed.to_vec();
        rows.sort_unstable();
        let mut masks = vec![0u64; rows.len()];
        let n = set.n();
        let (mut checks, mut cut) = (0, 0);
        // a prefix whose fixed positions already hold an excluding window
        // cannot extend to a member
        let keep = |code: u64, known: u64| {
            if complete || known.count_ones() as usize <= k {
                return true;
            }
            checks += 1;
            for (m, &r) in masks.iter_mut().zip(&rows) {
                *m = (r ^ code) & known;
            }
            let alive = !hittable_within(&masks, n, k);
            cut += usize::from(!alive);
            alive
        };
        let _ = for_each_cycle_packed(&graph, keep, |code| {
            stats.cycles += 1;
            if rows.binary_search(&code).is_ok() {
                return ControlFlow::Continue(());
            }
            // the last prefix check saw every position
            emit(unpack_binary(code, n))
        });
        stats.verified = checks;
        stats.cut_prefixes = cut;
        return Ok(());
    }
    // cyclic windows are all windows when k = n-1
    let complete = k + 1 == set.n();
    let _ = for_each_cycle(&graph, |path| {
        stats.cycles += 1;
        let word = decode_cycle(&graph, path);
        if set.contains(&word) {
            return ControlFlow::Continue(());
        }
        if !complete {
            stats.verified += 1;
            if !survives_all_windows(set, &word, k) {
                return ControlFlow::Continue(());
            }
        }
        emit(word)
    });
    Ok(())
}

pub fn recon_overlap(set: &StringSet, k: usize) -> Result<ReconReport> {
    recon_overlap_with(set, k, &OverlapOptions::default())
}

pub fn recon_overlap_with(set: &StringSet, k: usize, opts: &OverlapOptions) -> Result<ReconReport> {
    recon_overlap_traced(set, k, opts).map(|(r, _)| r)
}

/// `Recon_k(S)` through the overlap graph, with work counters.
pub fn recon_overlap_traced(set: &StringSet, k: usize, opts: &OverlapOptions) -> Result<(ReconReport, OverlapStats)> {
    check_k(set, k)?;
    let mut stats = OverlapStats::default();
    if k == 1 {
        return Ok((recon_product(set, opts.limits)?, stats));
    }
    let mut words = set.rows().to_vec();
    if k < set.n() {
        extras(set, k, opts, &mut stats, |w| {
            words.push(w);
            ControlFlow::Continue(())
        })?;
    }
    Ok((ReconReport::from_words(set, k, words), stats))
}

pub fn decide_perfect_at_k(set: &StringSet, k: usize) -> Result<bool> {
    decide_perfect_at_k_with(set, k, &OverlapOptions::default())
}

/// `Recon_k(S) = S`, stopping at the first verified extra string.
pub fn decide_perfect_at_k_with(set: &StringSet, k: usize, opts: &OverlapOptions) -> Result<bool> {
    check_k(set, k)?;
    if k == 1 {
        return Ok(is_1_reconstructible(set));
    }
    if k == set.n() {
        return Ok(true);
    }
    let mut found = false;
    extras(set, k, opts, &mut OverlapStats::default(), |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(!found)
}
