use std::fmt::Write as _;

use crate::combin::checked_pow;
use crate::error::{input_err, Result};
use crate::strings::{format_word, StringSet, Word};

use super::ordering::ColumnOrdering;

/// Global node index: layers are laid out contiguously.
pub type NodeId = u32;

/// One cyclic window and its distinct `k`-mers, sorted.
///
/// A `k`-mer is stored base-`alphabet` with the first window position as the
/// most significant digit, so numeric order is lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub window: Vec<usize>,
    pub kmers: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct OverlapGraph {
    n: usize,
    k: usize,
    alphabet: u8,
    layers: Vec<Layer>,
    offsets: Vec<usize>,
    succ_start: Vec<usize>,
    succ: Vec<NodeId>,
}

/// Builds the layered overlap graph for `2 <= k <= n-1` under `ord`.
pub fn build_graph(set: &StringSet, k: usize, ord: &ColumnOrdering) -> Result<OverlapGraph> {
    let n = set.n();
    if k < 2 || k + 1 > n {
        return Err(input_err!("overlap graph needs 2 <= k <= n-1, got k={k} n={n}"));
    }
    if ord.len() != n {
        return Err(input_err!("column ordering has {} columns, set has {n}", ord.len()));
    }
    let a = set.alphabet() as u64;
    if checked_pow(a, k).is_none() {
        return Err(input_err!("{a}^{k} k-mers do not fit a 64-bit code"));
    }
    let perm = &ord.permutation;
    let layers = (0..n)
        .map(|i| {
            let window: Vec<usize> = (0..k).map(|j| perm[(i + j) % n]).collect();
            let mut kmers: Vec<u64> = set
                .rows()
                .iter()
                .map(|row| window.iter().fold(0u64, |acc, &p| acc * a + row[p] as u64))
                .collect();
            kmers.sort_unstable();
            kmers.dedup();
            Layer { window, kmers }
        })
        .collect();
    Ok(OverlapGraph::from_layers(n, k, set.alphabet(), layers))
}

impl OverlapGraph {
    /// Links every `k`-mer to each `k`-mer of the next layer that extends its
    /// `(k-1)`-suffix, found by binary search.
    pub(crate) fn from_layers(n: usize, k: usize, alphabet: u8, layers: Vec<Layer>) -> Self {
        let a = alphabet as u64;
        let high = checked_pow(a, k - 1).expect("checked at construction");
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for layer in &layers {
            offsets.push(total);
            total += layer.kmers.len();
        }
        offsets.push(total);

        let mut succ_start = Vec::with_capacity(total + 1);
        let mut succ = Vec::with_capacity(total * 2);
        succ_start.push(0);
        for (i, layer) in layers.iter().enumerate() {
            let next = (i + 1) % n;
            let next_kmers = &layers[next].kmers;
            for &kmer in &layer.kmers {
                let stem = (kmer % high) * a;
                // extensions of the suffix are contiguous in the sorted layer
                let lo = next_kmers.partition_point(|&v| v < stem);
                let hi = next_kmers.partition_point(|&v| v < stem + a);
                succ.extend((lo..hi).map(|j| (offsets[next] + j) as NodeId));
                succ_start.push(succ.len());
            }
        }
        OverlapGraph { n, k, alphabet, layers, offsets, succ_start, succ }
    }

    pub fn n_layers(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn node_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    /// Global ids of layer `i`.
    pub fn layer_nodes(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn layer_of(&self, node: usize) -> usize {
        self.offsets.partition_point(|&o| o <= node) - 1
    }

    pub fn successors(&self, node: usize) -> &[NodeId] {
        &self.succ[self.succ_start[node]..self.succ_start[node + 1]]
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for &v in &self.succ {
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn kmer(&self, node: usize) -> u64 {
        let layer = self.layer_of(node);
        self.layers[layer].kmers[node - self.offsets[layer]]
    }

    /// Symbols of a node's `k`-mer in window order.
    pub fn kmer_symbols(&self, node: usize) -> Word {
        kmer_digits(self.kmer(node), self.k, self.alphabet)
    }

    /// Keeps only the nodes flagged in `keep` and relinks the survivors.
    pub fn retain_nodes(&self, keep: &[bool]) -> OverlapGraph {
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(i, layer)| Layer {
                window: layer.window.clone(),
                kmers: layer
                    .kmers
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| keep[self.offsets[i] + j])
                    .map(|(_, &km)| km)
                    .collect(),
            })
            .collect();
        OverlapGraph::from_layers(self.n, self.k, self.alphabet, layers)
    }

    /// Text listing, one node per line: `layer node kmer -> successors`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, layer) in self.layers.iter().enumerate() {
            let window: Vec<String> = layer.window.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "# layer {i} window {}", window.join(","));
            for node in self.layer_nodes(i) {
                let succ: Vec<String> = self.successors(node).iter().map(|s| s.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{i} {node} {} -> {}",
                    format_word(&self.kmer_symbols(node)),
                    succ.join(",")
                );
            }
        }
        out
    }

    /// Dense adjacency matrix, rows and columns in global node order.
    pub fn dense_adjacency(&self) -> Vec<Vec<u64>> {
        let total = self.node_count();
        let mut a = vec![vec![0u64; total]; total];
        for (u, row) in a.iter_mut().enumerate() {
            for &v in self.successors(u) {
                row[v as usize] = 1;
            }
        }
        a
    }
}

pub(crate) fn kmer_digits(mut code: u64, k: usize, alphabet: u8) -> Word {
    let a = alphabet as u64;
    let mut out = vec![0u8; k];
    for slot in out.iter_mut().rev() {
        *slot = (code % a) as u8;
        code /= a;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&str]) -> StringSet {
        StringSet::parse(&rows.join("\n"), None).unwrap()
    }

    fn quartet() -> StringSet {
        set(&["00111", "10111", "11000", "10100"])
    }

    #[test]
    fn quartet_layers_and_edges() {
        let s = quartet();
        let g = build_graph(&s, 3, &ColumnOrdering::identity(&s)).unwrap();
        let sizes: Vec<usize> = (0..5).map(|i| g.layer_nodes(i).len()).collect();
        assert_eq!(sizes, vec![3, 3, 3, 3, 4]);
        assert_eq!(g.node_count(), 16);
        assert_eq!(g.layers()[4].window, vec![4, 0, 1]);
        for u in 0..g.node_count() {
            let out = g.successors(u).len();
            assert!((1..=2).contains(&out), "node {u} out-degree {out}");
        }
        assert!(g.in_degrees().iter().all(|&d| d >= 1));
    }

    #[test]
    fn edges_follow_overlaps() {
        let s = set(&["0110", "1011", "0001", "1110", "0101"]);
        let g = build_graph(&s, 3, &ColumnOrdering::identity(&s)).unwrap();
        for u in 0..g.node_count() {
            let next_layer = (g.layer_of(u) + 1) % 4;
            let su = g.kmer_symbols(u);
            for v in g.layer_nodes(next_layer) {
                let sv = g.kmer_symbols(v);
                let linked = g.successors(u).contains(&(v as NodeId));
                assert_eq!(linked, su[1..] == sv[..2], "u={u} v={v}");
            }
        }
    }

    #[test]
    fn single_string_gives_single_cycle_graph() {
        let s = set(&["10110"]);
        let g = build_graph(&s, 2, &ColumnOrdering::identity(&s)).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn k_out_of_range() {
        let s = quartet();
        let id = ColumnOrdering::identity(&s);
        assert!(build_graph(&s, 1, &id).is_err());
        assert!(build_graph(&s, 5, &id).is_err());
    }

    #[test]
    fn dump_lists_every_node() {
        let s = quartet();
        let g = build_graph(&s, 3, &ColumnOrdering::identity(&s)).unwrap();
        let dump = g.dump();
        assert_eq!(dump.lines().filter(|l| !l.starts_with('#')).count(), 16);
        assert!(dump.contains("0 0 001 -> "));
    }
}
