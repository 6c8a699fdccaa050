#![allow(dead_code)]

use proptest::prelude::*;
use recon_core::StringSet;

/// Random binary sets with `n` in `min_n..=max_n` and `1..=max_m` distinct rows.
pub fn binary_set(min_n: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = StringSet> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let cap = max_m.min(1usize << n);
        prop::collection::btree_set(0..(1u64 << n), 1..=cap).prop_map(move |codes| {
            let codes: Vec<u64> = codes.into_iter().collect();
            StringSet::from_packed(n, &codes).unwrap()
        })
    })
}

/// A binary set together with an arbitrary query string.
pub fn binary_set_and_query(max_n: usize, max_m: usize) -> impl Strategy<Value = (StringSet, Vec<u8>)> {
    binary_set(1, max_n, max_m).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), prop::collection::vec(0u8..2, n))
    })
}

pub fn set(rows: &[&str]) -> StringSet {
    StringSet::parse(&rows.join("\n"), None).unwrap()
}

pub fn basis(n: usize) -> StringSet {
    let codes: Vec<u64> = (0..n).map(|i| 1 << i).collect();
    StringSet::from_packed(n, &codes).unwrap()
}

pub fn even_parity(n: usize) -> StringSet {
    let codes: Vec<u64> = (0..1u64 << n).filter(|c| c.count_ones() % 2 == 0).collect();
    StringSet::from_packed(n, &codes).unwrap()
}

/// Restriction of every row to the given columns, deduplicated.
pub fn restrict_columns(s: &StringSet, cols: &[usize]) -> StringSet {
    let mut rows: Vec<Vec<u8>> = s.rows().iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    rows.sort();
    rows.dedup();
    StringSet::new(cols.len(), s.alphabet(), rows).unwrap()
}
