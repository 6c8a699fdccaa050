use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use recon_core::{Error, StringSet};

use crate::error::Result;

/// The splitmix64 output function.
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one trial. `k` is deliberately not mixed in: a sweep over `k`
/// reuses the same dataset for a given `(n, m, trial)`.
pub fn trial_seed(master: u64, n: usize, m: usize, trial: usize) -> u64 {
    [n as u64, m as u64, trial as u64].into_iter().fold(mix64(master), |h, v| mix64(h ^ v))
}

/// `m` distinct uniform binary strings of length `n`.
///
/// The generator is xoshiro256** seeded through splitmix64
/// (`Xoshiro256StarStar::seed_from_u64`). Each draw takes the low `n` bits
/// of one 64-bit output; repeats are rejected. Rows keep draw order.
pub fn gen_random_set(n: usize, m: usize, seed: u64) -> Result<StringSet> {
    if n == 0 || n > 64 {
        return Err(Error::Input(format!("string length {n} outside 1..=64")).into());
    }
    if m == 0 || (n < 64 && m as u64 > 1u64 << n) {
        return Err(Error::Input(format!("cannot draw {m} distinct binary strings of length {n}")).into());
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut codes = Vec::with_capacity(m);
    while codes.len() < m {
        let c = rng.gen::<u64>() & mask;
        if seen.insert(c) {
            codes.push(c);
        }
    }
    Ok(StringSet::from_packed(n, &codes)?)
}
