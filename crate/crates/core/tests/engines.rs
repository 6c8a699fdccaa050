mod common;

use std::ops::ControlFlow;

use common::*;
use proptest::prelude::*;
use recon_core::combin::binomial;
use recon_core::overlap::{decide_perfect_at_k_with, for_each_cycle, recon_overlap_with, OrderingMode, OverlapOptions};
use recon_core::*;

fn brute(s: &StringSet, k: usize) -> ReconReport {
    recon_brute(s, k, Limits::default()).unwrap()
}

/// Diagonal of `A^n` by dense repeated multiplication.
fn dense_cycle_diagonal(g: &OverlapGraph) -> Vec<u64> {
    let a = g.dense_adjacency();
    let size = a.len();
    let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| {
        let mut z = vec![vec![0u64; size]; size];
        for i in 0..size {
            for l in 0..size {
                if x[i][l] == 0 {
                    continue;
                }
                for j in 0..size {
                    z[i][j] += x[i][l] * y[l][j];
                }
            }
        }
        z
    };
    let mut p = a.clone();
    for _ in 1..g.n_layers() {
        p = mul(&p, &a);
    }
    (0..size).map(|i| p[i][i]).collect()
}

fn quartet() -> StringSet {
    set(&["00111", "10111", "11000", "10100"])
}

fn identity_graph(s: &StringSet, k: usize) -> OverlapGraph {
    build_graph(s, k, &ColumnOrdering::identity(s)).unwrap()
}

#[test]
fn quartet_cycle_structure() {
    let s = quartet();
    let g = identity_graph(&s, 3);
    let counts = cycle_counts(&g);
    assert_eq!(counts.layer_total(&g, 0), 4);
    // last layer: one cycle per node
    assert!(g.layer_nodes(4).all(|v| counts.counts[v] == 1));
    assert_eq!(enumerate_cycles(&g), s.sorted_rows());
    assert!(prune_unique(&g, &counts).is_empty());

    let r = recon_overlap(&s, 3).unwrap();
    assert_eq!(r.members, s);
    assert_eq!(r.extras, 0);
}

#[test]
fn single_string_has_unit_counts() {
    let s = set(&["0110100"]);
    let g = identity_graph(&s, 3);
    let counts = cycle_counts(&g);
    assert!(counts.counts.iter().all(|&c| c == 1));
    assert_eq!(enumerate_cycles(&g), s.sorted_rows());
}

#[test]
fn complete_layers_count_every_string() {
    let all: Vec<u64> = (0..64).collect();
    let s = StringSet::from_packed(6, &all).unwrap();
    let g = identity_graph(&s, 3);
    let counts = cycle_counts(&g);
    assert_eq!(counts.layer_total(&g, 0), 64);
    assert_eq!(prune_unique(&g, &counts).node_count(), g.node_count());
}

#[test]
fn basis_prunes_to_zero_string() {
    let s = basis(4);
    let r = recon_overlap(&s, 3).unwrap();
    assert_eq!(r.extras, 1);
    assert!(r.members.contains(&[0, 0, 0, 0]));

    let g = identity_graph(&s, 3);
    let pruned = prune_unique(&g, &cycle_counts(&g));
    let left = enumerate_cycles(&pruned);
    assert!(left.contains(&vec![0, 0, 0, 0]));
    assert!(left.iter().all(|w| w == &vec![0, 0, 0, 0] || s.contains(w)));
}

#[test]
fn trio_and_parity_decisions() {
    let trio = set(&["001", "011", "100"]);
    assert_eq!(recon_overlap(&trio, 2).unwrap().members, trio);
    assert!(!decide_perfect_at_k(&even_parity(4), 3).unwrap());
    assert!(decide_perfect_at_k(&even_parity(4), 4).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn overlap_and_greedy_match_brute(s in binary_set(2, 11, 48), identity in any::<bool>(), prune in any::<bool>()) {
        let opts = OverlapOptions {
            ordering: if identity { OrderingMode::Identity } else { OrderingMode::Greedy },
            prune,
            ..Default::default()
        };
        for k in 1..=s.n() {
            let b = brute(&s, k);
            prop_assert_eq!(&recon_overlap_with(&s, k, &opts).unwrap(), &b, "overlap k={}", k);
            prop_assert_eq!(&recon_greedy(&s, k, None).unwrap().0, &b, "greedy k={}", k);
            prop_assert_eq!(decide_perfect_at_k_with(&s, k, &opts).unwrap(), b.extras == 0);
        }
    }

    #[test]
    fn graph_invariants(s in binary_set(3, 10, 40), k in 2usize..=9) {
        let k = k.min(s.n() - 1);
        let g = build_graph(&s, k, &order_columns(&s)).unwrap();
        let bound = s.len().min(1 << k);
        for i in 0..s.n() {
            prop_assert!(g.layer_nodes(i).len() <= bound);
        }
        prop_assert!(g.node_count() <= s.n() * bound);
        prop_assert!(g.node_count() <= g.edge_count() && g.edge_count() <= 2 * g.node_count());
        let indeg = g.in_degrees();
        for v in 0..g.node_count() {
            prop_assert!((1..=2).contains(&g.successors(v).len()));
            prop_assert!(indeg[v] >= 1);
        }

        let counts = cycle_counts(&g);
        prop_assert!(counts.counts.iter().all(|&c| c >= 1));
        let cycles = enumerate_cycles(&g);
        prop_assert_eq!(counts.layer_total(&g, 0), cycles.len() as u64);
        for i in 0..s.n() {
            prop_assert_eq!(counts.layer_total(&g, i), cycles.len() as u64);
        }
        for row in s.rows() {
            prop_assert!(cycles.binary_search(row).is_ok());
        }

        let pruned = enumerate_cycles(&prune_unique(&g, &counts));
        for w in &pruned {
            prop_assert!(cycles.binary_search(w).is_ok());
        }
        for w in &cycles {
            if pruned.binary_search(w).is_err() {
                prop_assert!(s.contains(w), "pruned a non-input cycle");
            }
        }
    }

    #[test]
    fn blockwise_counts_match_dense_power(s in binary_set(3, 8, 24), k in 2usize..=7) {
        let k = k.min(s.n() - 1);
        let g = build_graph(&s, k, &order_columns(&s)).unwrap();
        prop_assume!(g.node_count() <= 200);
        prop_assert_eq!(cycle_counts(&g).counts, dense_cycle_diagonal(&g));
    }

    #[test]
    fn cycle_walks_spell_their_strings(s in binary_set(3, 10, 30), k in 2usize..=9) {
        let k = k.min(s.n() - 1);
        let g = build_graph(&s, k, &order_columns(&s)).unwrap();
        let _ = for_each_cycle(&g, |path| {
            for (i, &v) in path.iter().enumerate() {
                assert_eq!(g.layer_of(v), i);
            }
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn greedy_stages_track_prefix_reconstruction(s in binary_set(2, 9, 32), k in 1usize..=8) {
        let k = k.min(s.n());
        let (_, trace) = recon_greedy(&s, k, None).unwrap();
        prop_assert_eq!(trace.frontier_sizes.len(), s.n() - k + 1);
        for (stage, &size) in trace.frontier_sizes.iter().enumerate() {
            let cols: Vec<usize> = (0..k + stage).collect();
            let prefix = restrict_columns(&s, &cols);
            prop_assert_eq!(size, brute(&prefix, k).members.len());
        }
    }
}

#[test]
fn greedy_checks_follow_the_counting_formula() {
    for n in 3..=8 {
        let s = even_parity(n);
        for k in 1..n {
            let (r, trace) = recon_greedy(&s, k, None).unwrap();
            assert_eq!(r.members.len(), 1 << n);
            let expected: u64 = (k..n).map(|i| (1u64 << (i + 1)) * binomial(i, k - 1)).sum();
            assert_eq!(trace.checks, expected, "n={n} k={k}");
            assert!(trace.checks <= (1u64 << (n + 1)) * binomial(n, k - 1));
        }
    }
}

#[test]
fn graph_dump_has_matrix_friendly_layout() {
    let s = quartet();
    let g = identity_graph(&s, 3);
    let a = g.dense_adjacency();
    assert_eq!(a.len(), 16);
    // off-block-diagonal structure: edges only go to the next layer
    for u in 0..16 {
        for v in 0..16 {
            if a[u][v] == 1 {
                assert_eq!((g.layer_of(u) + 1) % 5, g.layer_of(v));
            }
        }
    }
}
