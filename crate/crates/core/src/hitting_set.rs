//! Hitting Set over a universe of at most 64 elements, the two reductions
//! between it and string non-containment, the padding isomorphism, and the
//! toggled-family cross-check for perfect reconstruction.

use std::fmt;

use crate::combin::{low_mask, Bits};
use crate::error::{input_err, Error, Result};
use crate::recon::Limits;
use crate::strings::{StringSet, Word, MAX_LEN};

/// A family of subsets of `0..universe`, each stored as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    universe: usize,
    sets: Vec<u64>,
    pub budget: Option<usize>,
}

impl HittingSetInstance {
    pub fn new(universe: usize, sets: Vec<u64>) -> Result<Self> {
        if universe > MAX_LEN {
            return Err(input_err!("universe size {universe} above {MAX_LEN}"));
        }
        if let Some(s) = sets.iter().find(|&&s| s & !low_mask(universe) != 0) {
            return Err(input_err!("set {:?} has elements outside 0..{universe}", mask_elements(*s)));
        }
        Ok(HittingSetInstance { universe, sets, budget: None })
    }

    pub fn from_lists(universe: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(lists.len());
        for list in lists {
            let mut mask = 0u64;
            for &e in list {
                if e >= universe || e >= MAX_LEN {
                    return Err(input_err!("element {e} outside 0..{universe}"));
                }
                mask |= 1 << e;
            }
            sets.push(mask);
        }
        Self::new(universe, sets)
    }

    /// Parses `n m` followed by `m` lines of space-separated elements. A
    /// blank line in the body is the empty set; `#` lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
        let header = lines
            .by_ref()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| input_err!("missing `n m` header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| input_err!("bad header token {t:?}")))
            .collect::<Result<_>>()?;
        let [universe, count] = nums[..] else {
            return Err(input_err!("header must be `n m`, got {header:?}"));
        };
        let mut lists = Vec::with_capacity(count);
        for i in 0..count {
            let line = lines.next().ok_or_else(|| input_err!("expected {count} sets, found {i}"))?;
            let list = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| input_err!("set {i}: bad element {t:?}")))
                .collect::<Result<Vec<usize>>>()?;
            lists.push(list);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(input_err!("trailing content after {count} sets"));
        }
        Self::from_lists(universe, &lists)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    /// An empty member set cannot be hit.
    pub fn is_unhittable(&self) -> bool {
        self.sets.contains(&0)
    }

    /// Largest set size `d`.
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_hit_by(&self, hitters: u64) -> bool {
        self.sets.iter().all(|&s| s & hitters != 0)
    }
}

impl fmt::Display for HittingSetInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.universe, self.sets.len())?;
        for &s in &self.sets {
            let parts: Vec<String> = Bits(s).map(|e| e.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn mask_elements(mask: u64) -> Vec<usize> {
    Bits(mask).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HittingSetSolution {
    pub hitters: u64,
    /// Whether `hitters` is known to have minimum size.
    pub optimal: bool,
}

impl HittingSetSolution {
    pub fn size(&self) -> usize {
        self.hitters.count_ones() as usize
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.hitters)
    }
}

/// Output of the d-approximation: the hitters and the member sets whose
/// elements were taken wholesale (pairwise disjoint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub solution: HittingSetSolution,
    pub selected: Vec<usize>,
}

/// The smallest unhit set, restricted to `allowed` elements.
fn smallest_unhit(sets: &[u64], chosen: u64, allowed: u64) -> Option<u64> {
    sets.iter()
        .filter(|&&s| s & chosen == 0)
        .map(|&s| s & allowed)
        .min_by_key(|s| s.count_ones())
}

/// Greedy count of pairwise disjoint unhit sets (restricted to `allowed`),
/// a lower bound on how many more elements are needed.
fn packing_bound(sets: &[u64], chosen: u64, allowed: u64) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &s in sets {
        if s & chosen == 0 {
            let s = s & allowed;
            if s & used == 0 {
                used |= s;
                count += 1;
            }
        }
    }
    count
}

/// Depth-bounded search: one pass finds the smallest unhit set and a
/// disjoint packing of unhit sets, which must stay within `budget`.
fn fpt(sets: &[u64], chosen: u64, allowed: u64, budget: usize, nodes: &mut u64) -> Option<u64> {
    *nodes += 1;
    let mut smallest: Option<u64> = None;
    let mut used = 0u64;
    let mut packing = 0;
    for &s in sets {
        if s & chosen != 0 {
            continue;
        }
        let s = s & allowed;
        if smallest.is_none_or(|m| s.count_ones() < m.count_ones()) {
            smallest = Some(s);
        }
        if s & used == 0 {
            used |= s;
            packing += 1;
        }
    }
    let Some(smallest) = smallest else {
        return Some(chosen);
    };
    if smallest == 0 || packing > budget {
        return None;
    }
    if budget == 1 {
        // one element must lie in every unhit set
        let common = sets.iter().filter(|&&s| s & chosen == 0).fold(allowed, |acc, &s| acc & s);
        return (common != 0).then(|| chosen | 1 << common.trailing_zeros());
    }
    let mut allowed = allowed;
    for e in Bits(smallest) {
        if let Some(h) = fpt(sets, chosen | 1 << e, allowed, budget - 1, nodes) {
            return Some(h);
        }
        allowed &= !(1 << e);
    }
    None
}

/// Whether the family over `0..universe` has a hitting set of size `<= k`.
pub(crate) fn hittable_within(sets: &[u64], universe: usize, k: usize) -> bool {
    let mut nodes = 0;
    fpt(sets, 0, low_mask(universe), k, &mut nodes).is_some()
}

impl HittingSetInstance {
    /// Picks the lowest-index unhit set and takes all its elements until every
    /// set is hit. The chosen sets are disjoint, so the result is within a
    /// factor `d` of optimal.
    pub fn approx_d(&self) -> Option<Approximation> {
        if self.is_unhittable() {
            return None;
        }
        let mut hitters = 0u64;
        let mut selected = Vec::new();
        for (i, &s) in self.sets.iter().enumerate() {
            if s & hitters == 0 {
                hitters |= s;
                selected.push(i);
            }
        }
        let optimal = self.max_set_size() <= 1;
        Some(Approximation { solution: HittingSetSolution { hitters, optimal }, selected })
    }

    /// Minimum-cardinality hitting set by branch and bound, or `None` when
    /// the family contains the empty set.
    pub fn solve_exact(&self) -> Option<HittingSetSolution> {
        let initial = self.approx_d()?.solution.hitters;
        let mut best = initial;
        self.bnb(0, low_mask(self.universe), &mut best);
        Some(HittingSetSolution { hitters: best, optimal: true })
    }

    fn bnb(&self, chosen: u64, allowed: u64, best: &mut u64) {
        let size = chosen.count_ones() as usize;
        let Some(smallest) = smallest_unhit(&self.sets, chosen, allowed) else {
            if size < best.count_ones() as usize {
                *best = chosen;
            }
            return;
        };
        if smallest == 0 {
            return;
        }
        let bound = size + packing_bound(&self.sets, chosen, allowed);
        if bound >= best.count_ones() as usize {
            return;
        }
        let mut allowed = allowed;
        for e in Bits(smallest) {
            self.bnb(chosen | 1 << e, allowed, best);
            // later siblings must avoid `e`
            allowed &= !(1 << e);
        }
    }

    /// Bounded search tree of depth `k` branching on the elements of an
    /// unhit set. `None` when no hitting set of size `<= k` exists.
    pub fn solve_fpt(&self, k: usize) -> Option<HittingSetSolution> {
        self.solve_fpt_traced(k).0
    }

    /// As [`solve_fpt`](Self::solve_fpt), also returning the number of
    /// search nodes visited (at most `d^k` internal branchings).
    pub fn solve_fpt_traced(&self, k: usize) -> (Option<HittingSetSolution>, u64) {
        let mut nodes = 0;
        if self.is_unhittable() {
            return (None, nodes);
        }
        let found = fpt(&self.sets, 0, low_mask(self.universe), k, &mut nodes);
        let solution = found.map(|hitters| HittingSetSolution { hitters, optimal: false });
        (solution, nodes)
    }

    /// Whether every toggled family `{S_i ⊕ X}` with `X` outside the family
    /// has a hitting set of size `<= k`. Exhaustive over all `2^n` masks `X`.
    pub fn toggled_decision(&self, k: usize, limits: Limits) -> Result<bool> {
        let space = limits.check_space(2, self.universe, "toggled hitting set")?;
        let mut members = self.sets.clone();
        members.sort_unstable();
        for x in 0..space {
            if members.binary_search(&x).is_ok() {
                continue;
            }
            let toggled = HittingSetInstance {
                universe: self.universe,
                sets: self.sets.iter().map(|&s| s ^ x).collect(),
                budget: None,
            };
            if toggled.solve_fpt(k).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One set per string of `S`: the positions where it disagrees with `x`.
/// A hitting set of size `<= k` exists iff `x ∉ Recon_k(S)`.
pub fn from_noncontainment(set: &StringSet, x: &[u8]) -> Result<HittingSetInstance> {
    set.check_word(x)?;
    HittingSetInstance::new(set.n(), set.disagreements(x))
}

/// Indicator strings of the sets, queried with the all-zeros string.
/// Repeated sets collapse to one string, which leaves every hitting set unchanged.
pub fn to_noncontainment(h: &HittingSetInstance) -> Result<(StringSet, Word)> {
    if h.is_unhittable() {
        return Err(input_err!("the empty set has no indicator-reduction image"));
    }
    if h.universe == 0 || h.sets.is_empty() {
        return Err(input_err!("instance needs a nonempty universe and at least one set"));
    }
    let mut seen = std::collections::HashSet::new();
    let codes: Vec<u64> = h.sets.iter().copied().filter(|s| seen.insert(*s)).collect();
    Ok((StringSet::from_packed(h.universe, &codes)?, vec![0; h.universe]))
}

/// `min k` with `x ∉ Recon_k(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exclusion {
    At(usize),
    /// `x ∈ S`, so it belongs to every reconstruction.
    Never,
}

pub fn min_exclusion_k(set: &StringSet, x: &[u8]) -> Result<Exclusion> {
    let h = from_noncontainment(set, x)?;
    Ok(match h.solve_exact() {
        Some(sol) => Exclusion::At(sol.size()),
        None => Exclusion::Never,
    })
}

/// A padded non-containment instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padded {
    pub set: StringSet,
    pub query: Word,
    pub k: usize,
}

fn doubled(word: &[u8]) -> impl Iterator<Item = u8> + '_ {
    word.iter().flat_map(|&c| [c, c])
}

fn successor_pairs(word: &[u8], alphabet: u8) -> impl Iterator<Item = u8> + '_ {
    word.iter().flat_map(move |&c| [c, (c + 1) % alphabet])
}

/// Maps `(S, x, k)` with padding `y` to `(S'(y), d(x)e(y), k)`: every
/// symbol is doubled and `y` is appended as `(c, c+1 mod a)` pairs.
///
/// The window size stays `k`. A window over doubled columns never covers more
/// original columns than it has indices, while a `2k` window could cover `2k`
/// of them and reject strings that `Recon_k` keeps.
pub fn pad_instance(set: &StringSet, x: &[u8], k: usize, y: &[u8]) -> Result<Padded> {
    set.check_word(x)?;
    let a = set.alphabet();
    if let Some(&c) = y.iter().find(|&&c| c >= a) {
        return Err(input_err!("padding symbol {c} outside alphabet of size {a}"));
    }
    let len = 2 * (set.n() + y.len());
    if len > MAX_LEN {
        return Err(input_err!("padded length {len} above {MAX_LEN}"));
    }
    let pad = |w: &[u8]| -> Word { doubled(w).chain(successor_pairs(y, a)).collect() };
    let rows = set.rows().iter().map(|r| pad(r)).collect();
    Ok(Padded {
        set: StringSet::new(len, a, rows)?,
        query: pad(x),
        k,
    })
}

/// Recovers `y` from the longest suffix of `(c, c+1 mod a)` pairs of the query.
pub fn unpad(padded: &Padded) -> Result<Word> {
    let a = padded.set.alphabet();
    let q = &padded.query;
    if !q.len().is_multiple_of(2) {
        return Err(Error::Decode(format!("padded query has odd length {}", q.len())));
    }
    let pairs: Vec<(u8, u8)> = q.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let tail = pairs.iter().rev().take_while(|&&(c, d)| d == (c + 1) % a).count();
    let head = &pairs[..pairs.len() - tail];
    if let Some(i) = head.iter().position(|&(c, d)| c != d) {
        return Err(Error::Decode(format!("pair {i} is neither doubled nor a successor pair")));
    }
    Ok(pairs[pairs.len() - tail..].iter().map(|&(c, _)| c).collect())
}
