use crate::strings::StringSet;

/// A column permutation and the pairwise column similarities it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnOrdering {
    /// `permutation[p]` is the original column placed at position `p`.
    pub permutation: Vec<usize>,
    /// Symmetric `n × n` similarities with diagonal `m`.
    pub similarity: Vec<Vec<u64>>,
}

impl ColumnOrdering {
    pub fn identity(set: &StringSet) -> Self {
        ColumnOrdering {
            permutation: (0..set.n()).collect(),
            similarity: similarity_matrix(set),
        }
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    /// Sum of similarities between consecutive columns.
    pub fn chain_score(&self) -> u64 {
        self.permutation
            .windows(2)
            .map(|w| self.similarity[w[0]][w[1]])
            .sum()
    }
}

/// Binary sets: `|<u, v>|` of the columns rewritten over `{-1, 1}`. Larger
/// alphabets: the number of rows on which the two columns agree.
pub fn similarity_matrix(set: &StringSet) -> Vec<Vec<u64>> {
    let (n, m) = (set.n(), set.len() as i64);
    let mut sim = vec![vec![0u64; n]; n];
    for i in 0..n {
        sim[i][i] = m as u64;
        for j in i + 1..n {
            let agree = set.rows().iter().filter(|r| r[i] == r[j]).count() as i64;
            let value = if set.is_binary() {
                (2 * agree - m).unsigned_abs()
            } else {
                agree as u64
            };
            sim[i][j] = value;
            sim[j][i] = value;
        }
    }
    sim
}

/// Greedy chain: start from the most similar pair, then keep appending the
/// unused column most similar to the current end. Ties go to lower indices.
pub fn order_columns(set: &StringSet) -> ColumnOrdering {
    let similarity = similarity_matrix(set);
    let n = set.n();
    if n <= 2 {
        return ColumnOrdering { permutation: (0..n).collect(), similarity };
    }
    let mut seed = (0, 1);
    for i in 0..n {
        for j in i + 1..n {
            if similarity[i][j] > similarity[seed.0][seed.1] {
                seed = (i, j);
            }
        }
    }
    let mut used = vec![false; n];
    let mut permutation = vec![seed.0, seed.1];
    used[seed.0] = true;
    used[seed.1] = true;
    while permutation.len() < n {
        let end = *permutation.last().expect("chain is nonempty");
        let next = (0..n)
            .filter(|&c| !used[c])
            .fold(None, |best: Option<usize>, c| match best {
                Some(b) if similarity[end][b] >= similarity[end][c] => Some(b),
                _ => Some(c),
            })
            .expect("an unused column remains");
        used[next] = true;
        permutation.push(next);
    }
    ColumnOrdering { permutation, similarity }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&str]) -> StringSet {
        StringSet::parse(&rows.join("\n"), None).unwrap()
    }

    #[test]
    fn identical_columns_end_up_adjacent() {
        // columns 0 and 3 are identical
        let s = set(&["1001", "0100", "1111", "0010", "1011"]);
        let ord = order_columns(&s);
        let pos = |c| ord.permutation.iter().position(|&x| x == c).unwrap();
        assert_eq!(pos(0).abs_diff(pos(3)), 1);
        assert_eq!(ord.similarity[0][3], 5);
    }

    #[test]
    fn two_columns_keep_identity() {
        let s = set(&["01", "11"]);
        assert_eq!(order_columns(&s).permutation, vec![0, 1]);
    }

    #[test]
    fn similarity_is_symmetric_with_diagonal_m() {
        let s = set(&["00111", "10111", "11000", "10100"]);
        let sim = similarity_matrix(&s);
        for i in 0..5 {
            assert_eq!(sim[i][i], 4);
            for j in 0..5 {
                assert_eq!(sim[i][j], sim[j][i]);
            }
        }
        // columns 3 and 4 agree on every row: {1,1},{1,1},{0,0},{0,0}
        assert_eq!(sim[3][4], 4);
        // columns 0 and 1 agree on rows 0 and 2 only: dot = 0
        assert_eq!(sim[0][1], 0);
        let ord = order_columns(&s);
        let mut sorted = ord.permutation.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        assert!(ord.chain_score() >= ColumnOrdering::identity(&s).chain_score());
    }

    #[test]
    fn general_alphabet_counts_agreements() {
        let s = set(&["012", "011", "222"]);
        let sim = similarity_matrix(&s);
        assert_eq!(sim[1][2], 2);
        assert_eq!(sim[0][1], 1);
    }
}
