//! The data model: string sets over a small alphabet, windows, projections.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::combin::Bits;
use crate::error::{input_err, Result};

/// Longest supported string; index sets are stored as `u64` masks.
pub const MAX_LEN: usize = 64;
/// Symbols are written as single ASCII digits.
pub const MAX_ALPHABET: u8 = 10;

/// A single length-`n` string, one symbol per byte.
pub type Word = Vec<u8>;

/// Parses a string of ASCII digits into symbols.
pub fn parse_word(text: &str) -> Result<Word> {
    text.trim()
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| input_err!("symbol {c:?} is not an ASCII digit"))
        })
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    word.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// A nonempty set of distinct strings of a common length `n` over `[0, alphabet)`.
///
/// Rows keep their construction order. Binary sets additionally carry one
/// packed `u64` per row with bit `i` holding the symbol at position `i`.
#[derive(Clone)]
pub struct StringSet {
    n: usize,
    alphabet: u8,
    rows: Vec<Word>,
    packed: Vec<u64>,
    lookup: HashSet<Word>,
}

impl StringSet {
    pub fn new(n: usize, alphabet: u8, rows: Vec<Word>) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(input_err!("string length {n} outside 1..={MAX_LEN}"));
        }
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(input_err!("alphabet size {alphabet} outside 2..={MAX_ALPHABET}"));
        }
        if rows.is_empty() {
            return Err(input_err!("string set is empty"));
        }
        let mut seen: HashMap<&[u8], usize> = HashMap::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(input_err!("string {i} has length {}, expected {n}", row.len()));
            }
            if let Some(&c) = row.iter().find(|&&c| c >= alphabet) {
                return Err(input_err!("string {i} has symbol {c} outside alphabet of size {alphabet}"));
            }
            if let Some(first) = seen.insert(row, i) {
                return Err(input_err!("string {i} duplicates string {first}"));
            }
        }
        Ok(Self::from_rows_unchecked(n, alphabet, rows))
    }

    pub(crate) fn from_rows_unchecked(n: usize, alphabet: u8, rows: Vec<Word>) -> Self {
        let packed = if alphabet == 2 {
            rows.iter().map(|r| pack_binary(r)).collect()
        } else {
            Vec::new()
        };
        let lookup = rows.iter().cloned().collect();
        StringSet { n, alphabet, rows, packed, lookup }
    }

    /// Builds a binary set from packed codes (bit `i` = position `i`).
    pub fn from_packed(n: usize, codes: &[u64]) -> Result<Self> {
        let rows = codes.iter().map(|&c| unpack_binary(c, n)).collect();
        Self::new(n, 2, rows)
    }

    /// Parses the dataset format: one string of ASCII digits per line, `#`
    /// comments and blank lines ignored. The alphabet is inferred as
    /// `max digit + 1` (at least 2) unless `alphabet` overrides it.
    pub fn parse(text: &str, alphabet: Option<u8>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut line_of: HashMap<Word, usize> = HashMap::new();
        let mut n = None;
        for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let word = parse_word(line).map_err(|e| input_err!("line {lineno}: {e}"))?;
            match n {
                None => n = Some(word.len()),
                Some(len) if len != word.len() => {
                    return Err(input_err!(
                        "line {lineno}: length {} differs from first string length {len}",
                        word.len()
                    ))
                }
                _ => {}
            }
            if let Some(prev) = line_of.insert(word.clone(), lineno) {
                return Err(input_err!("line {lineno}: duplicate of line {prev}"));
            }
            rows.push(word);
        }
        let n = n.ok_or_else(|| input_err!("no strings in input"))?;
        let inferred = rows.iter().flatten().copied().max().unwrap_or(0) + 1;
        let alphabet = match alphabet {
            Some(a) if a < inferred => {
                return Err(input_err!("alphabet size {a} too small for symbol {}", inferred - 1))
            }
            Some(a) => a,
            None => inferred.max(2),
        };
        Self::new(n, alphabet, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet == 2
    }

    /// Number of strings `m`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.lookup.contains(word)
    }

    /// Packed rows for binary sets.
    pub fn packed(&self) -> Option<&[u64]> {
        self.is_binary().then_some(self.packed.as_slice())
    }

    /// Rows in lexicographic order.
    pub fn sorted_rows(&self) -> Vec<Word> {
        let mut rows = self.rows.clone();
        rows.sort_unstable();
        rows
    }

    /// Validates a query string against this set's length and alphabet.
    pub fn check_word(&self, word: &[u8]) -> Result<()> {
        if word.len() != self.n {
            return Err(input_err!("query has length {}, expected {}", word.len(), self.n));
        }
        if let Some(&c) = word.iter().find(|&&c| c >= self.alphabet) {
            return Err(input_err!("query symbol {c} outside alphabet of size {}", self.alphabet));
        }
        Ok(())
    }

    /// One mask per row: bit `i` set iff `word` and the row differ at `i`.
    pub fn disagreements(&self, word: &[u8]) -> Vec<u64> {
        if self.is_binary() {
            let x = pack_binary(word);
            self.packed.iter().map(|&s| s ^ x).collect()
        } else {
            self.rows.iter().map(|row| disagreement(word, row)).collect()
        }
    }

    /// Distinct symbols seen in column `i`, as a bitmask over the alphabet.
    pub fn column_symbols(&self, i: usize) -> u16 {
        self.rows.iter().fold(0u16, |acc, row| acc | 1 << row[i])
    }
}

impl PartialEq for StringSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.alphabet == other.alphabet && self.lookup == other.lookup
    }
}

impl Eq for StringSet {}

impl fmt::Debug for StringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StringSet")
            .field("n", &self.n)
            .field("alphabet", &self.alphabet)
            .field("rows", &self.rows.iter().map(|r| format_word(r)).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for StringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{}", format_word(row))?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn pack_binary(word: &[u8]) -> u64 {
    word.iter()
        .enumerate()
        .fold(0, |acc, (i, &c)| acc | (c as u64 & 1) << i)
}

pub(crate) fn unpack_binary(code: u64, n: usize) -> Word {
    (0..n).map(|i| (code >> i & 1) as u8).collect()
}

#[inline]
pub(crate) fn disagreement(a: &[u8], b: &[u8]) -> u64 {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// A nonempty, strictly increasing set of column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    indices: Vec<usize>,
}

impl Window {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(input_err!("window is empty"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(input_err!("window indices must be strictly increasing"));
        }
        if let Some(&last) = indices.last().filter(|&&i| i >= n) {
            return Err(input_err!("window index {last} out of range for length {n}"));
        }
        Ok(Window { indices })
    }

    pub fn from_mask(mask: u64) -> Self {
        Window { indices: Bits(mask).collect() }
    }

    /// The full window `0..n`.
    pub fn full(n: usize) -> Self {
        Window { indices: (0..n).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn restrict(&self, word: &[u8]) -> Word {
        self.indices.iter().map(|&i| word[i]).collect()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// The distinct patterns a set shows on one window, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub window: Window,
    pub patterns: Vec<Word>,
}

impl Projection {
    pub fn contains(&self, pattern: &[u8]) -> bool {
        self.patterns.binary_search_by(|p| p.as_slice().cmp(pattern)).is_ok()
    }

    /// Whether every `alphabet^|window|` pattern is present.
    pub fn is_complete(&self, alphabet: u8) -> bool {
        crate::combin::checked_pow(alphabet as u64, self.window.len())
            .is_some_and(|total| total == self.patterns.len() as u64)
    }
}

/// Restricts every string of `set` to `window`.
pub fn project(set: &StringSet, window: &Window) -> Result<Projection> {
    if let Some(&i) = window.indices().last().filter(|&&i| i >= set.n()) {
        return Err(input_err!("window index {i} out of range for length {}", set.n()));
    }
    let mut patterns: Vec<Word> = set.rows().iter().map(|r| window.restrict(r)).collect();
    patterns.sort_unstable();
    patterns.dedup();
    Ok(Projection { window: window.clone(), patterns })
}
