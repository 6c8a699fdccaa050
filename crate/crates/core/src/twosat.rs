//! 2-SAT with solution enumeration, and the 2-reconstructibility test for
//! binary sets built on it.
//!
//! Enumeration is branch-and-check: variables are fixed in index order and a
//! branch is entered only if the implication graph with the forced literals
//! stays satisfiable, so every branch taken ends in a solution.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::strings::{StringSet, Word};

/// Literal `2 * var + value`: "variable `var` takes `value`".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, value: bool) -> Self {
        Lit((var as u32) << 1 | value as u32)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn value(self) -> bool {
        self.0 & 1 == 1
    }

    #[must_use]
    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, Default)]
pub struct TwoSat {
    vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSat {
    pub fn new(vars: usize) -> Self {
        TwoSat { vars, clauses: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// Adds the clause `a ∨ b`.
    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        debug_assert!(a.var() < self.vars && b.var() < self.vars);
        self.clauses.push((a, b));
    }

    /// Satisfiability with the given literals forced true.
    pub fn is_satisfiable(&self, forced: &[Lit]) -> bool {
        let graph = ImplicationGraph::build(self, forced);
        let comp = graph.components();
        (0..self.vars).all(|v| comp[2 * v] != comp[2 * v + 1])
    }

    /// Calls `emit` on each satisfying assignment in lexicographic order
    /// (`false < true`), stopping early when `emit` breaks.
    pub fn enumerate<F>(&self, mut emit: F)
    where
        F: FnMut(&[bool]) -> ControlFlow<()>,
    {
        if !self.is_satisfiable(&[]) {
            return;
        }
        let mut forced = Vec::with_capacity(self.vars);
        let _ = self.branch(&mut forced, &mut emit);
    }

    fn branch<F>(&self, forced: &mut Vec<Lit>, emit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[bool]) -> ControlFlow<()>,
    {
        let var = forced.len();
        if var == self.vars {
            let assignment: Vec<bool> = forced.iter().map(|l| l.value()).collect();
            return emit(&assignment);
        }
        for value in [false, true] {
            forced.push(Lit::new(var, value));
            if self.is_satisfiable(forced) {
                self.branch(forced, emit)?;
            }
            forced.pop();
        }
        ControlFlow::Continue(())
    }

    /// Counts solutions, stopping once `limit` have been seen.
    pub fn count_solutions(&self, limit: usize) -> usize {
        let mut count = 0;
        self.enumerate(|_| {
            count += 1;
            if count >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        count
    }
}

/// CSR implication graph over `2 * vars` literal nodes.
struct ImplicationGraph {
    start: Vec<usize>,
    targets: Vec<usize>,
}

impl ImplicationGraph {
    fn build(sat: &TwoSat, forced: &[Lit]) -> Self {
        let nodes = 2 * sat.vars;
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * sat.clauses.len() + forced.len());
        for &(a, b) in &sat.clauses {
            edges.push((a.negate().index(), b.index()));
            edges.push((b.negate().index(), a.index()));
        }
        for &l in forced {
            edges.push((l.negate().index(), l.index()));
        }
        let mut start = vec![0usize; nodes + 1];
        for &(u, _) in &edges {
            start[u + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut targets = vec![0usize; edges.len()];
        for (u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
        }
        ImplicationGraph { start, targets }
    }

    /// Strongly connected component id per node (iterative Tarjan).
    fn components(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let nodes = self.start.len() - 1;
        let mut index = vec![UNSEEN; nodes];
        let mut low = vec![0usize; nodes];
        let mut on_stack = vec![false; nodes];
        let mut comp = vec![UNSEEN; nodes];
        let mut stack = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();
        let mut counter = 0;
        let mut comps = 0;

        for root in 0..nodes {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, self.start[root]));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (u, ref mut edge)) = call.last_mut() {
                if *edge < self.start[u + 1] {
                    let v = self.targets[*edge];
                    *edge += 1;
                    if index[v] == UNSEEN {
                        index[v] = counter;
                        low[v] = counter;
                        counter += 1;
                        stack.push(v);
                        on_stack[v] = true;
                        call.push((v, self.start[v]));
                    } else if on_stack[v] {
                        low[u] = low[u].min(index[v]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[u]);
                    }
                    if low[u] == index[u] {
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp[w] = comps;
                            if w == u {
                                break;
                            }
                        }
                        comps += 1;
                    }
                }
            }
        }
        comp
    }
}

/// The 2-SAT formula whose models are exactly `Recon_2(S)` for a binary set:
/// for every column pair, one clause per bit pair absent from the projection.
pub fn pair_formula(set: &StringSet) -> Result<TwoSat> {
    let packed = set.packed().ok_or_else(|| {
        Error::Unsupported(format!(
            "2-reconstruction via 2-SAT needs a binary alphabet, got size {}",
            set.alphabet()
        ))
    })?;
    let n = set.n();
    let mut sat = TwoSat::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let seen = packed.iter().fold(0u8, |acc, &s| {
                acc | 1 << ((s >> i & 1) << 1 | (s >> j & 1))
            });
            for pair in 0..4u8 {
                if seen >> pair & 1 == 0 {
                    let (bi, bj) = (pair >> 1 == 1, pair & 1 == 1);
                    sat.add_clause(Lit::new(i, !bi), Lit::new(j, !bj));
                }
            }
        }
    }
    Ok(sat)
}

/// Whether `Recon_2(S) = S` for a binary set. Enumeration stops at model `m + 1`.
pub fn is_2_reconstructible(set: &StringSet) -> Result<bool> {
    let sat = pair_formula(set)?;
    Ok(sat.count_solutions(set.len() + 1) == set.len())
}

/// All of `Recon_2(S)` by enumerating the pair formula.
pub fn recon_2sat(set: &StringSet) -> Result<Vec<Word>> {
    let sat = pair_formula(set)?;
    let mut out = Vec::new();
    sat.enumerate(|a| {
        out.push(a.iter().map(|&b| b as u8).collect());
        ControlFlow::Continue(())
    });
    Ok(out)
}
