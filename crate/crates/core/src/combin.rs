//! Small combinatorics helpers over `u64` index masks.

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the `k`-subsets of `0..n` as bitmasks in increasing numeric order
/// (Gosper's hack). Yields the empty mask once when `k == 0`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    limit: u128,
    next: Option<u128>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64, "index masks hold at most 64 positions");
        let next = if k > n { None } else { Some((1u128 << k) - 1) };
        KSubsets { limit: 1u128 << n, next }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(cur as u64)
    }
}

/// Iterates the set bits of a mask from lowest to highest.
#[derive(Debug, Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Spreads the low bits of `compact` onto the positions listed in `slots`.
pub fn scatter(compact: u64, slots: &[usize]) -> u64 {
    slots
        .iter()
        .enumerate()
        .filter(|(bit, _)| compact >> bit & 1 == 1)
        .fold(0, |acc, (_, &pos)| acc | 1 << pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_counted_by_binomial() {
        for n in 0..=12 {
            for k in 0..=n {
                let subsets: Vec<u64> = KSubsets::new(n, k).collect();
                assert_eq!(subsets.len() as u64, binomial(n, k), "n={n} k={k}");
                assert!(subsets.iter().all(|s| s.count_ones() as usize == k));
                assert!(subsets.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(KSubsets::new(3, 4).count(), 0);
        assert_eq!(KSubsets::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(KSubsets::new(64, 1).count(), 64);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 4), 4845);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn bits_and_scatter() {
        assert_eq!(Bits(0b1010_0101).collect::<Vec<_>>(), vec![0, 2, 5, 7]);
        assert_eq!(scatter(0b101, &[3, 9, 1]), (1 << 3) | (1 << 1));
        assert_eq!(low_mask(64), u64::MAX);
        assert_eq!(low_mask(3), 7);
    }
}
