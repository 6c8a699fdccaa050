use super::graph::OverlapGraph;

/// Number of length-`n` cycles through each node, saturating at `u64::MAX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCountTable {
    pub counts: Vec<u64>,
    /// Set where the count saturated; such counts are lower bounds only.
    pub overflow: Vec<bool>,
}

impl CycleCountTable {
    pub fn any_overflow(&self) -> bool {
        self.overflow.iter().any(|&o| o)
    }

    /// Sum over one layer, which equals the total number of cycles.
    pub fn layer_total(&self, g: &OverlapGraph, layer: usize) -> u64 {
        g.layer_nodes(layer)
            .map(|v| self.counts[v])
            .fold(0u64, u64::saturating_add)
    }
}

/// Diagonal of `A^n`, computed through the cyclic block structure.
///
/// Every cycle meets each layer exactly once, so the count at `v` is the sum,
/// over nodes `u` of a reference layer, of (paths `u → v`) × (paths `v → u`).
/// The reference is the smallest layer; each of its nodes costs one forward
/// and one backward sweep over the edges.
pub fn cycle_counts(g: &OverlapGraph) -> CycleCountTable {
    let total = g.node_count();
    let n = g.n_layers();
    let mut counts = vec![0u64; total];
    let mut overflow = vec![false; total];
    if total == 0 || (0..n).any(|i| g.layer_nodes(i).is_empty()) {
        return CycleCountTable { counts, overflow };
    }
    let reference = (0..n).min_by_key(|&i| g.layer_nodes(i).len()).unwrap_or(0);
    let order: Vec<usize> = (0..n).map(|j| (reference + j) % n).collect();

    let mut back = vec![0u64; total];
    let mut fwd = vec![0u64; total];
    for u in g.layer_nodes(reference) {
        // paths from each node forward to `u`
        for (j, &layer) in order.iter().enumerate().rev() {
            for v in g.layer_nodes(layer) {
                back[v] = if j == n - 1 {
                    g.successors(v).iter().filter(|&&w| w as usize == u).count() as u64
                } else {
                    g.successors(v)
                        .iter()
                        .fold(0u64, |acc, &w| acc.saturating_add(back[w as usize]))
                };
            }
        }
        // paths from `u` forward to each node
        for &layer in &order {
            for v in g.layer_nodes(layer) {
                fwd[v] = 0;
            }
        }
        fwd[u] = 1;
        for &layer in &order[..n - 1] {
            for v in g.layer_nodes(layer) {
                let f = fwd[v];
                if f == 0 {
                    continue;
                }
                for &w in g.successors(v) {
                    fwd[w as usize] = fwd[w as usize].saturating_add(f);
                }
            }
        }
        for &layer in &order {
            for v in g.layer_nodes(layer) {
                let through = fwd[v].saturating_mul(back[v]);
                counts[v] = counts[v].saturating_add(through);
            }
        }
    }
    for (c, o) in counts.iter().zip(overflow.iter_mut()) {
        *o = *c == u64::MAX;
    }
    CycleCountTable { counts, overflow }
}
