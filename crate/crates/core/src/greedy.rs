//! Greedy baseline: grow partial strings one column at a time, keeping an
//! extension only if every window made of the new column and `k-1` earlier
//! columns matches some input row.

use crate::combin::{scatter, KSubsets};
use crate::error::Result;
use crate::overlap::ColumnOrdering;
use crate::recon::{check_k, ReconReport};
use crate::strings::{unpack_binary, StringSet, Word};

/// Instrumentation for one greedy run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GreedyTrace {
    /// (extension, window) compatibility tests performed.
    pub checks: u64,
    /// Partial strings alive after each stage, starting with the seed window.
    pub frontier_sizes: Vec<usize>,
}

trait Partials {
    type P: Clone + Ord;
    fn seed(&self, row: usize, positions: &[usize]) -> Self::P;
    /// Disagreement masks of `x` against every row, limited to `prefix`.
    fn prefix_dis(&self, x: &Self::P, prefix_positions: &[usize], prefix: u64, out: &mut Vec<u64>);
    fn symbol(&self, row: usize, pos: usize) -> u8;
    fn extend(&self, x: &Self::P, pos: usize, c: u8) -> Self::P;
    fn finish(&self, x: Self::P) -> Word;
}

struct Packed<'a> {
    rows: &'a [u64],
    n: usize,
}

impl Partials for Packed<'_> {
    type P = u64;

    fn seed(&self, row: usize, positions: &[usize]) -> u64 {
        let mask = positions.iter().fold(0u64, |acc, &p| acc | 1 << p);
        self.rows[row] & mask
    }

    fn prefix_dis(&self, x: &u64, _: &[usize], prefix: u64, out: &mut Vec<u64>) {
        out.clear();
        out.extend(self.rows.iter().map(|&s| (s ^ x) & prefix));
    }

    fn symbol(&self, row: usize, pos: usize) -> u8 {
        (self.rows[row] >> pos & 1) as u8
    }

    fn extend(&self, x: &u64, pos: usize, c: u8) -> u64 {
        x | (c as u64) << pos
    }

    fn finish(&self, x: u64) -> Word {
        unpack_binary(x, self.n)
    }
}

struct Symbols<'a>(&'a StringSet);

impl Partials for Symbols<'_> {
    type P = Word;

    fn seed(&self, row: usize, positions: &[usize]) -> Word {
        let src = &self.0.rows()[row];
        let mut w = vec![0; self.0.n()];
        for &p in positions {
            w[p] = src[p];
        }
        w
    }

    fn prefix_dis(&self, x: &Word, positions: &[usize], _: u64, out: &mut Vec<u64>) {
        out.clear();
        out.extend(self.0.rows().iter().map(|row| {
            positions
                .iter()
                .filter(|&&p| row[p] != x[p])
                .fold(0u64, |acc, &p| acc | 1 << p)
        }));
    }

    fn symbol(&self, row: usize, pos: usize) -> u8 {
        self.0.rows()[row][pos]
    }

    fn extend(&self, x: &Word, pos: usize, c: u8) -> Word {
        let mut w = x.clone();
        w[pos] = c;
        w
    }

    fn finish(&self, x: Word) -> Word {
        x
    }
}

/// `Recon_k(S)` by greedy extension in the order given by `ord` (identity
/// when `None`), with counters.
pub fn recon_greedy(set: &StringSet, k: usize, ord: Option<&ColumnOrdering>) -> Result<(ReconReport, GreedyTrace)> {
    check_k(set, k)?;
    let order: Vec<usize> = match ord {
        Some(o) if o.len() == set.n() => o.permutation.clone(),
        Some(o) => {
            return Err(crate::error::input_err!(
                "column ordering has {} columns, set has {}",
                o.len(),
                set.n()
            ))
        }
        None => (0..set.n()).collect(),
    };
    let (words, trace) = match set.packed() {
        Some(rows) => run(&Packed { rows, n: set.n() }, set, k, &order),
        None => run(&Symbols(set), set, k, &order),
    };
    Ok((ReconReport::from_words(set, k, words), trace))
}

fn run<R: Partials>(repr: &R, set: &StringSet, k: usize, order: &[usize]) -> (Vec<Word>, GreedyTrace) {
    let m = set.len();
    let mut trace = GreedyTrace::default();
    let mut frontier: Vec<R::P> = (0..m).map(|r| repr.seed(r, &order[..k])).collect();
    frontier.sort_unstable();
    frontier.dedup();
    trace.frontier_sizes.push(frontier.len());

    let mut dis = Vec::with_capacity(m);
    let mut matching = Vec::with_capacity(m);
    for i in k..set.n() {
        let pos = order[i];
        let prefix_positions = &order[..i];
        let prefix = prefix_positions.iter().fold(0u64, |acc, &p| acc | 1 << p);
        // each window is `pos` plus a (k-1)-subset of the earlier columns
        let windows: Vec<u64> = KSubsets::new(i, k - 1)
            .map(|sub| scatter(sub, prefix_positions))
            .collect();
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for x in &frontier {
            repr.prefix_dis(x, prefix_positions, prefix, &mut dis);
            for c in 0..set.alphabet() {
                matching.clear();
                matching.extend((0..m).filter(|&r| repr.symbol(r, pos) == c).map(|r| dis[r]));
                let mut ok = true;
                for &w in &windows {
                    trace.checks += 1;
                    if !matching.iter().any(|&d| d & w == 0) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    next.push(repr.extend(x, pos, c));
                }
            }
        }
        frontier = next;
        trace.frontier_sizes.push(frontier.len());
    }
    (frontier.into_iter().map(|x| repr.finish(x)).collect(), trace)
}
