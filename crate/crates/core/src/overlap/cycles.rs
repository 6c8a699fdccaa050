use std::ops::ControlFlow;

use crate::strings::Word;

use super::graph::OverlapGraph;

/// Visits every length-`n` cycle as its node path (one node per layer,
/// starting in layer 0).
///
/// Each node carries the set of layer-0 nodes it can return to; the search
/// from `u` only enters nodes whose set contains `u`, so every branch taken
/// completes a cycle.
pub fn for_each_cycle<F>(g: &OverlapGraph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n_layers();
    if g.is_empty() || (0..n).any(|i| g.layer_nodes(i).is_empty()) {
        return ControlFlow::Continue(());
    }
    let (reach, words) = return_sets(g);
    let first = g.layer_nodes(0);
    let mut path = Vec::with_capacity(n);
    for u in first.clone() {
        let b = u - first.start;
        let returns = |v: usize| reach[v * words + b / 64] >> (b % 64) & 1 == 1;
        path.clear();
        path.push(u);
        walk(g, u, &returns, &mut path, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// For every node, the bitset of layer-0 nodes reachable from it before the
/// walk wraps around, laid out `words` u64s per node.
fn return_sets(g: &OverlapGraph) -> (Vec<u64>, usize) {
    let n = g.n_layers();
    let first = g.layer_nodes(0);
    let words = first.len().div_ceil(64);
    let mut reach = vec![0u64; g.node_count() * words];
    for v in g.layer_nodes(n - 1) {
        for &w in g.successors(v) {
            let b = w as usize - first.start;
            reach[v * words + b / 64] |= 1 << (b % 64);
        }
    }
    for layer in (1..n - 1).rev() {
        for v in g.layer_nodes(layer) {
            for &w in g.successors(v) {
                let w = w as usize;
                for i in 0..words {
                    reach[v * words + i] |= reach[w * words + i];
                }
            }
        }
    }
    (reach, words)
}

/// Bits each node adds to the packed string of a binary graph, following
/// the same layout as [`decode_cycle`].
fn node_bits(g: &OverlapGraph) -> Vec<u64> {
    let (n, k) = (g.n_layers(), g.k());
    let layers = g.layers();
    let mut bits = vec![0u64; g.node_count()];
    for v in g.layer_nodes(0) {
        let kmer = g.kmer(v);
        for (j, &pos) in layers[0].window.iter().enumerate() {
            bits[v] |= (kmer >> (k - 1 - j) & 1) << pos;
        }
    }
    for (i, layer) in layers.iter().enumerate().take(n - k + 1).skip(1) {
        let pos = *layer.window.last().expect("layers have k >= 2 positions");
        for v in g.layer_nodes(i) {
            bits[v] = (g.kmer(v) & 1) << pos;
        }
    }
    bits
}

/// Binary-only variant of [`for_each_cycle`] that hands over each cycle as
/// its packed string (bit `i` = position `i`).
///
/// `keep(code, known)` is asked after every node that fixes a new position,
/// with `known` the fixed positions so far; returning `false` abandons every
/// cycle through that prefix.
pub(crate) fn for_each_cycle_packed<K, F>(g: &OverlapGraph, mut keep: K, mut visit: F) -> ControlFlow<()>
where
    K: FnMut(u64, u64) -> bool,
    F: FnMut(u64) -> ControlFlow<()>,
{
    debug_assert_eq!(g.alphabet(), 2);
    let n = g.n_layers();
    if g.is_empty() || (0..n).any(|i| g.layer_nodes(i).is_empty()) {
        return ControlFlow::Continue(());
    }
    let (reach, words) = return_sets(g);
    let bits = node_bits(g);
    let mut known = Vec::with_capacity(n);
    let mut acc = 0u64;
    for layer in g.layers() {
        if known.is_empty() {
            acc = layer.window.iter().fold(0, |m, &p| m | 1 << p);
        } else {
            acc |= 1 << layer.window.last().expect("layers have k >= 2 positions");
        }
        known.push(acc);
    }
    let mut walker = PackedWalk { g, bits: &bits, known: &known, keep: &mut keep, visit: &mut visit };
    let first = g.layer_nodes(0);
    for u in first.clone() {
        let b = u - first.start;
        let returns = |v: usize| reach[v * words + b / 64] >> (b % 64) & 1 == 1;
        if (walker.keep)(bits[u], known[0]) {
            walker.walk(u, u, 1, bits[u], &returns)?;
        }
    }
    ControlFlow::Continue(())
}

struct PackedWalk<'a, K, F> {
    g: &'a OverlapGraph,
    bits: &'a [u64],
    known: &'a [u64],
    keep: &'a mut K,
    visit: &'a mut F,
}

impl<K, F> PackedWalk<'_, K, F>
where
    K: FnMut(u64, u64) -> bool,
    F: FnMut(u64) -> ControlFlow<()>,
{
    fn walk<R: Fn(usize) -> bool>(&mut self, start: usize, v: usize, depth: usize, code: u64, returns: &R) -> ControlFlow<()> {
        let g = self.g;
        if depth == g.n_layers() {
            if g.successors(v).iter().any(|&w| w as usize == start) {
                (self.visit)(code)?;
            }
            return ControlFlow::Continue(());
        }
        let fresh = self.known[depth] != self.known[depth - 1];
        for &w in g.successors(v) {
            let w = w as usize;
            if !returns(w) {
                continue;
            }
            let code = code | self.bits[w];
            if fresh && !(self.keep)(code, self.known[depth]) {
                continue;
            }
            self.walk(start, w, depth + 1, code, returns)?;
        }
        ControlFlow::Continue(())
    }
}

fn walk<R, F>(g: &OverlapGraph, start: usize, returns: &R, path: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
where
    R: Fn(usize) -> bool,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let v = *path.last().expect("path starts at a layer-0 node");
    if path.len() == g.n_layers() {
        if g.successors(v).iter().any(|&w| w as usize == start) {
            visit(path)?;
        }
        return ControlFlow::Continue(());
    }
    for &w in g.successors(v) {
        let w = w as usize;
        if returns(w) {
            path.push(w);
            walk(g, start, returns, path, visit)?;
            path.pop();
        }
    }
    ControlFlow::Continue(())
}

/// Reads a cycle back into a string in original column order: layer 0 fixes
/// its whole window and each following layer adds its last position.
pub fn decode_cycle(g: &OverlapGraph, path: &[usize]) -> Word {
    let (n, k, a) = (g.n_layers(), g.k() as u32, g.alphabet() as u64);
    let mut word = vec![0u8; n];
    let layers = g.layers();
    let head = g.kmer(path[0]);
    for (j, &pos) in layers[0].window.iter().enumerate() {
        word[pos] = (head / a.pow(k - 1 - j as u32) % a) as u8;
    }
    for (i, &node) in path.iter().enumerate().take(n - g.k() + 1).skip(1) {
        let pos = *layers[i].window.last().expect("layers have k >= 2 positions");
        word[pos] = (g.kmer(node) % a) as u8;
    }
    word
}

/// All strings spelled by length-`n` cycles, sorted.
pub fn enumerate_cycles(g: &OverlapGraph) -> Vec<Word> {
    let mut out = Vec::new();
    let _ = for_each_cycle(g, |path| {
        out.push(decode_cycle(g, path));
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    out.dedup();
    out
}
