//! Definition-level reconstruction: membership, brute-force `Recon_k`, the
//! point of no information, the 1-reconstructibility test, Hamming radius and
//! the sparsity bound.

use crate::combin::{checked_pow, KSubsets};
use crate::error::{input_err, Error, Result};
use crate::strings::{project, unpack_binary, StringSet, Window, Word};

/// Explicit caps for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest candidate space (`alphabet^n`) an exhaustive routine may walk.
    pub max_enumeration: u64,
    /// Worker threads for partitioned enumeration.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_enumeration: 1 << 26, threads: 1 }
    }
}

impl Limits {
    pub(crate) fn check_space(&self, alphabet: u8, n: usize, what: &str) -> Result<u64> {
        match checked_pow(alphabet as u64, n) {
            Some(space) if space <= self.max_enumeration => Ok(space),
            _ => Err(Error::Guard(format!(
                "{what} would enumerate {alphabet}^{n} strings, above the cap of {}",
                self.max_enumeration
            ))),
        }
    }
}

/// The result of a `k`-reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconReport {
    pub k: usize,
    /// All reconstructed strings, in lexicographic order.
    pub members: StringSet,
    /// `|members| - m`.
    pub extras: usize,
}

impl ReconReport {
    pub(crate) fn from_words(input: &StringSet, k: usize, mut words: Vec<Word>) -> Self {
        words.sort_unstable();
        words.dedup();
        let extras = words.len() - input.len();
        let members = StringSet::from_rows_unchecked(input.n(), input.alphabet(), words);
        ReconReport { k, members, extras }
    }

    /// Members that are not in the input set.
    pub fn extra_strings<'a>(&'a self, input: &'a StringSet) -> impl Iterator<Item = &'a Word> + 'a {
        self.members.rows().iter().filter(move |w| !input.contains(w))
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// A `k`-window on which the query's pattern is absent from the set.
    Excluded(Window),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

pub(crate) fn check_k(set: &StringSet, k: usize) -> Result<()> {
    if k == 0 || k > set.n() {
        Err(input_err!("window size {k} outside 1..={}", set.n()))
    } else {
        Ok(())
    }
}

/// Tests `x ∈ Recon_k(S)` by scanning every `k`-window in increasing mask order.
pub fn is_member(set: &StringSet, x: &[u8], k: usize) -> Result<Membership> {
    set.check_word(x)?;
    check_k(set, k)?;
    let dis = set.disagreements(x);
    if dis.contains(&0) {
        return Ok(Membership::Member);
    }
    Ok(KSubsets::new(set.n(), k)
        .find(|&w| dis.iter().all(|&d| d & w != 0))
        .map_or(Membership::Member, |w| Membership::Excluded(Window::from_mask(w))))
}

/// Exhaustive `Recon_k(S)`: every string of `A^n` checked against every `k`-window.
pub fn recon_brute(set: &StringSet, k: usize, limits: Limits) -> Result<ReconReport> {
    check_k(set, k)?;
    let space = limits.check_space(set.alphabet(), set.n(), "brute-force reconstruction")?;
    let words = if let Some(packed) = set.packed() {
        brute_binary(set.n(), packed, k, space, limits.threads.max(1))
    } else {
        brute_general(set, k, space)
    };
    Ok(ReconReport::from_words(set, k, words))
}

fn brute_binary(n: usize, packed: &[u64], k: usize, space: u64, threads: usize) -> Vec<Word> {
    let tables: Vec<(u64, Vec<u64>)> = KSubsets::new(n, k)
        .map(|w| {
            let mut pats: Vec<u64> = packed.iter().map(|&s| s & w).collect();
            pats.sort_unstable();
            pats.dedup();
            (w, pats)
        })
        .collect();
    let accepts = |c: u64| tables.iter().all(|(w, pats)| pats.binary_search(&(c & w)).is_ok());
    let scan = |lo: u64, hi: u64| -> Vec<u64> { (lo..hi).filter(|&c| accepts(c)).collect() };

    let codes: Vec<u64> = if threads <= 1 || space < 1 << 12 {
        scan(0, space)
    } else {
        let chunk = space.div_ceil(threads as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let (lo, hi) = (t * chunk, ((t + 1) * chunk).min(space));
                    scope.spawn(move || scan(lo, hi))
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    codes.into_iter().map(|c| unpack_binary(c, n)).collect()
}

fn brute_general(set: &StringSet, k: usize, space: u64) -> Vec<Word> {
    let (n, a) = (set.n(), set.alphabet());
    let windows: Vec<u64> = KSubsets::new(n, k).collect();
    let mut out = Vec::new();
    let mut word = vec![0u8; n];
    for _ in 0..space {
        let dis = set.disagreements(&word);
        if !windows.iter().any(|&w| dis.iter().all(|&d| d & w != 0)) {
            out.push(word.clone());
        }
        // odometer increment, last position fastest
        for c in word.iter_mut().rev() {
            *c += 1;
            if *c < a {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// Whether every `k`-window projection contains all `alphabet^k` patterns.
pub fn is_complete_at(set: &StringSet, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let Some(total) = checked_pow(set.alphabet() as u64, k) else {
        return false;
    };
    if k > set.n() || (set.len() as u64) < total {
        return false;
    }
    match set.packed() {
        Some(packed) => {
            let mut buf = Vec::with_capacity(packed.len());
            KSubsets::new(set.n(), k).all(|w| {
                buf.clear();
                buf.extend(packed.iter().map(|&s| s & w));
                buf.sort_unstable();
                buf.dedup();
                buf.len() as u64 == total
            })
        }
        None => KSubsets::new(set.n(), k).all(|w| {
            project(set, &Window::from_mask(w)).is_ok_and(|p| p.patterns.len() as u64 == total)
        }),
    }
}

/// Largest `k` with `Recon_k(S) = A^n`, or 0 when a single column already
/// misses a symbol. Binary search over `k` relies on completeness being
/// downward closed.
pub fn point_of_no_information(set: &StringSet) -> usize {
    let m = set.len() as u64;
    let a = set.alphabet() as u64;
    let mut hi = 0;
    while hi < set.n() && checked_pow(a, hi + 1).is_some_and(|t| t <= m) {
        hi += 1;
    }
    let mut lo = 0;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if is_complete_at(set, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// `S = Recon_1(S)` iff `m` equals the product of per-column symbol counts.
/// Linear in the input; the running product stops as soon as it passes `m`.
pub fn is_1_reconstructible(set: &StringSet) -> bool {
    let m = set.len() as u64;
    let mut product = 1u64;
    for i in 0..set.n() {
        product *= set.column_symbols(i).count_ones() as u64;
        if product > m {
            return false;
        }
    }
    product == m
}

/// `Recon_1(S)`, the product of the column symbol sets.
pub fn recon_product(set: &StringSet, limits: Limits) -> Result<ReconReport> {
    let columns: Vec<Vec<u8>> = (0..set.n())
        .map(|i| {
            let mask = set.column_symbols(i);
            (0..set.alphabet()).filter(|c| mask >> c & 1 == 1).collect()
        })
        .collect();
    let space = columns.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    if space.is_none_or(|s| s > limits.max_enumeration) {
        return Err(Error::Guard(format!(
            "1-reconstruction exceeds the enumeration cap of {}",
            limits.max_enumeration
        )));
    }
    let mut words: Vec<Word> = vec![Vec::with_capacity(set.n())];
    for column in &columns {
        words = words
            .into_iter()
            .flat_map(|w| {
                column.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    Ok(ReconReport::from_words(set, 1, words))
}

/// `d(S)`: the largest Hamming distance from any string of `A^n` to `S`.
pub fn hamming_radius(set: &StringSet, limits: Limits) -> Result<usize> {
    let space = limits.check_space(set.alphabet(), set.n(), "Hamming radius")?;
    if let Some(packed) = set.packed() {
        return Ok((0..space)
            .map(|x| packed.iter().map(|&s| (x ^ s).count_ones()).min().unwrap_or(0))
            .max()
            .unwrap_or(0) as usize);
    }
    let (n, a) = (set.n(), set.alphabet());
    let mut word = vec![0u8; n];
    let mut radius = 0;
    for _ in 0..space {
        let d = set.disagreements(&word).iter().map(|d| d.count_ones()).min().unwrap_or(0);
        radius = radius.max(d as usize);
        for c in word.iter_mut().rev() {
            *c += 1;
            if *c < a {
                break;
            }
            *c = 0;
        }
    }
    Ok(radius)
}

/// Lower bound on the point of perfect reconstruction from column imbalance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityBound {
    /// Largest `i` such that the `i` largest minority fractions sum below 1.
    pub bound: usize,
    /// Per-column majority string; always a member of `Recon_bound(S)`.
    pub witness: Word,
}

/// Minority counts `d_i` (rows off the column majority) are sorted decreasing,
/// ties by lower column, and summed while the total stays below `m`. Balanced
/// columns take the smaller symbol as majority.
pub fn sparsity_bound(set: &StringSet) -> SparsityBound {
    let m = set.len();
    let mut minority = Vec::with_capacity(set.n());
    let mut witness = Vec::with_capacity(set.n());
    for i in 0..set.n() {
        let mut counts = [0usize; crate::strings::MAX_ALPHABET as usize];
        for row in set.rows() {
            counts[row[i] as usize] += 1;
        }
        let (majority, count) = counts
            .iter()
            .enumerate()
            .fold((0, 0), |best, (c, &cnt)| if cnt > best.1 { (c, cnt) } else { best });
        witness.push(majority as u8);
        minority.push((m - count, i));
    }
    minority.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut sum = 0;
    let mut bound = 0;
    for (d, _) in minority {
        sum += d;
        if sum >= m {
            break;
        }
        bound += 1;
    }
    SparsityBound { bound, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::parse_word;

    fn set(rows: &[&str]) -> StringSet {
        StringSet::parse(&rows.join("\n"), None).unwrap()
    }

    fn words(report: &ReconReport) -> Vec<String> {
        report.members.rows().iter().map(|w| crate::format_word(w)).collect()
    }

    fn trio() -> StringSet {
        set(&["001", "011", "100"])
    }

    #[test]
    fn membership_examples() {
        let s = trio();
        assert_eq!(is_member(&s, &[0, 0, 0], 1).unwrap(), Membership::Member);
        assert_eq!(
            is_member(&s, &[0, 0, 0], 2).unwrap(),
            Membership::Excluded(Window::new(vec![0, 2], 3).unwrap())
        );
        for k in 1..=3 {
            for row in s.rows() {
                assert!(is_member(&s, row, k).unwrap().is_member());
            }
        }
        assert!(is_member(&s, &[0, 0], 1).is_err());
        assert!(is_member(&s, &[0, 0, 0], 0).is_err());
        assert!(is_member(&s, &[0, 0, 0], 4).is_err());
    }

    #[test]
    fn brute_examples() {
        let r = recon_brute(&trio(), 2, Limits::default()).unwrap();
        assert_eq!(words(&r), ["001", "011", "100"]);
        assert_eq!(r.extras, 0);

        let basis = set(&["100", "010", "001"]);
        let r = recon_brute(&basis, 2, Limits::default()).unwrap();
        assert_eq!(words(&r), ["000", "001", "010", "100"]);
        assert_eq!(r.extra_strings(&basis).cloned().collect::<Vec<_>>(), vec![vec![0, 0, 0]]);

        let r = recon_brute(&basis, 3, Limits::default()).unwrap();
        assert_eq!(r.members, basis);
    }

    #[test]
    fn brute_guard_is_an_error() {
        let s = StringSet::parse(&"0".repeat(30), None).unwrap();
        let tight = Limits { max_enumeration: 1 << 20, threads: 1 };
        assert!(matches!(recon_brute(&s, 2, tight), Err(Error::Guard(_))));
        assert!(matches!(hamming_radius(&s, tight), Err(Error::Guard(_))));
    }

    #[test]
    fn brute_threads_are_deterministic() {
        let s = set(&["0010110110101", "1110001010010", "0101011010001", "1001100110110"]);
        let one = recon_brute(&s, 2, Limits::default()).unwrap();
        let four = recon_brute(&s, 2, Limits { threads: 4, ..Limits::default() }).unwrap();
        assert_eq!(one.members.rows(), four.members.rows());
    }

    #[test]
    fn brute_general_alphabet() {
        let s = set(&["012", "120", "201"]);
        let r = recon_brute(&s, 2, Limits::default()).unwrap();
        assert_eq!(r.members, s);
        let r = recon_brute(&s, 1, Limits::default()).unwrap();
        assert_eq!(r.members.len(), 27);
    }

    #[test]
    fn no_information_examples() {
        let parity = set(&["000", "011", "101", "110"]);
        assert_eq!(point_of_no_information(&parity), 2);
        let all = set(&["00", "01", "10", "11"]);
        assert_eq!(point_of_no_information(&all), 2);
        assert_eq!(point_of_no_information(&trio()), 1);
        assert_eq!(point_of_no_information(&set(&["01", "00"])), 0);
    }

    #[test]
    fn one_reconstructible_examples() {
        assert!(is_1_reconstructible(&set(&["00", "01", "10", "11"])));
        assert!(!is_1_reconstructible(&trio()));
        assert!(is_1_reconstructible(&set(&["10110"])));
        assert!(is_1_reconstructible(&set(&["010", "011"])));
    }

    #[test]
    fn product_matches_brute_at_one() {
        let s = trio();
        assert_eq!(
            recon_product(&s, Limits::default()).unwrap(),
            recon_brute(&s, 1, Limits::default()).unwrap()
        );
    }

    #[test]
    fn hamming_radius_examples() {
        let all = set(&["00", "01", "10", "11"]);
        assert_eq!(hamming_radius(&all, Limits::default()).unwrap(), 0);
        assert_eq!(hamming_radius(&set(&["000"]), Limits::default()).unwrap(), 3);
        // every string is within distance 1 of {001, 011, 100}
        assert_eq!(hamming_radius(&trio(), Limits::default()).unwrap(), 1);
        assert_eq!(hamming_radius(&set(&["0000", "1111"]), Limits::default()).unwrap(), 2);
    }

    #[test]
    fn sparsity_examples() {
        let basis = set(&["1000", "0100", "0010", "0001"]);
        let b = sparsity_bound(&basis);
        assert_eq!((b.bound, b.witness), (3, vec![0, 0, 0, 0]));

        let b = sparsity_bound(&set(&["000"]));
        assert_eq!((b.bound, b.witness.clone()), (3, vec![0, 0, 0]));

        let s = trio();
        let b = sparsity_bound(&s);
        assert_eq!(b.bound, 2);
        assert_eq!(b.witness, parse_word("001").unwrap());
        assert!(is_member(&s, &b.witness, b.bound).unwrap().is_member());
    }

    #[test]
    fn sparsity_balanced_column_prefers_zero() {
        let b = sparsity_bound(&set(&["01", "10"]));
        assert_eq!(b.witness, vec![0, 0]);
        assert_eq!(b.bound, 1);
    }
}
