//! Reconstructing sets of fixed-length strings from their `k`-way projections.
//!
//! A string `x` is in `Recon_k(S)` when, for every set of `k` columns, some
//! string of `S` shows the same pattern as `x` on those columns. This crate
//! computes those reconstructions three ways (exhaustively, greedily, and
//! through a layered overlap graph), along with the point of perfect
//! reconstruction, the point of no information, and the hitting-set view of
//! membership.

pub mod combin;
pub mod error;
pub mod greedy;
pub mod hitting_set;
pub mod overlap;
pub mod perfect;
pub mod recon;
pub mod strings;
pub mod twosat;

pub use error::{Error, Result};
pub use greedy::{recon_greedy, GreedyTrace};
pub use hitting_set::{
    from_noncontainment, min_exclusion_k, pad_instance, to_noncontainment, unpad, Approximation,
    Exclusion, HittingSetInstance, HittingSetSolution, Padded,
};
pub use overlap::{
    build_graph, cycle_counts, decide_perfect_at_k, enumerate_cycles, order_columns, prune_unique,
    recon_overlap, ColumnOrdering, CycleCountTable, OverlapGraph, OverlapOptions,
};
pub use perfect::{decide_perfect_at, perfect_point, Engine, Search};
pub use recon::{
    hamming_radius, is_1_reconstructible, is_member, point_of_no_information, recon_brute,
    sparsity_bound, Limits, Membership, ReconReport, SparsityBound,
};
pub use strings::{format_word, parse_word, project, Projection, StringSet, Window, Word};
pub use twosat::{is_2_reconstructible, recon_2sat, TwoSat};
