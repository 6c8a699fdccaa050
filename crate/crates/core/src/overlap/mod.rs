//! The overlap-graph reconstruction engine.
//!
//! Columns are reordered so similar columns sit together, then each of the
//! `n` cyclically contiguous `k`-windows becomes a layer of distinct `k`-mers
//! with edges between `k-1` overlaps. Length-`n` cycles are exactly the
//! strings consistent with those `n` windows; nodes on a single cycle are
//! pruned, and surviving candidates outside `S` are checked against the
//! remaining windows with a hitting-set search.

mod counts;
mod cycles;
mod graph;
mod ordering;
mod pipeline;

pub use counts::{cycle_counts, CycleCountTable};
pub use cycles::{decode_cycle, enumerate_cycles, for_each_cycle};
pub use graph::{build_graph, Layer, NodeId, OverlapGraph};
pub use ordering::{order_columns, similarity_matrix, ColumnOrdering};
pub use pipeline::{
    decide_perfect_at_k, decide_perfect_at_k_with, prune_unique, recon_overlap,
    recon_overlap_traced, recon_overlap_with, OrderingMode, OverlapOptions, OverlapStats,
};
