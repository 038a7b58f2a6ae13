//! Subsets, shuffles and permutation signs.

use std::fmt;

/// Strictly increasing list of basis indices: a basis element of a wedge
/// power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexBlock(Vec<usize>);

impl IndexBlock {
    /// Wraps `indices`, which must already be strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices
            .windows(2)
            .all(|w| w[0] < w[1])
            .then_some(IndexBlock(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IndexBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An `(i, j)`-shuffle: `permutation[k]` is the image of position `k`
/// (0-based), increasing on the first `i` and the last `j` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub permutation: Vec<usize>,
    pub sign: i32,
}

/// Sign of a permutation given as images of `0..len`, by inversion count.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `(i, j)`-shuffles with their signs, in lexicographic order of the
/// first run.
pub fn shuffles(i: usize, j: usize) -> Vec<Shuffle> {
    combinations(i + j, i)
        .into_iter()
        .map(|first| {
            let mut permutation = first.clone();
            permutation.extend((0..i + j).filter(|x| !first.contains(x)));
            let sign = permutation_sign(&permutation);
            Shuffle { permutation, sign }
        })
        .collect()
}

/// Sorts `indices`, returning the sorted block and the sign of the sorting
/// permutation, or `None` if an index repeats.
pub fn sort_to_block(indices: &[usize]) -> Option<(IndexBlock, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for a in 1..v.len() {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            v.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((IndexBlock(v), sign))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < n - k + pos {
                break;
            }
        }
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Compositions of `total` into `parts` nonnegative integers, each at most
/// `max_part`.
pub fn compositions(total: usize, parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(
        total: usize,
        parts: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=total.min(max_part) {
            cur.push(x);
            rec(total - x, parts - 1, max_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Basis of `∧^size` of a `dim`-dimensional space: sorted subsets in
/// lexicographic order, with constant-time ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    dim: usize,
    size: usize,
    subsets: Vec<Vec<usize>>,
    // binom[a][b] = C(a, b)
    binom: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(dim: usize, size: usize) -> Self {
        let binom = (0..=dim)
            .map(|a| (0..=size).map(|b| binomial(a, b)).collect())
            .collect();
        WedgeBasis {
            dim,
            size,
            subsets: combinations(dim, size),
            binom,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, rank: usize) -> &[usize] {
        &self.subsets[rank]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Lexicographic rank of a strictly increasing subset.
    pub fn rank(&self, sorted: &[usize]) -> usize {
        debug_assert_eq!(sorted.len(), self.size);
        let mut r = 0;
        let mut next = 0;
        for (pos, &c) in sorted.iter().enumerate() {
            let remaining = self.size - pos - 1;
            for skipped in next..c {
                r += self.binom[self.dim - skipped - 1][remaining];
            }
            next = c + 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shuffle_examples() {
        let s03 = shuffles(0, 3);
        assert_eq!(s03.len(), 1);
        assert_eq!(s03[0].permutation, vec![0, 1, 2]);
        assert_eq!(s03[0].sign, 1);

        let s11 = shuffles(1, 1);
        let signs: Vec<i32> = s11.iter().map(|s| s.sign).collect();
        assert_eq!(signs, vec![1, -1]);

        assert_eq!(shuffles(2, 1).len(), 3);
    }

    #[test]
    fn sort_examples() {
        let (b, s) = sort_to_block(&[2, 1]).unwrap();
        assert_eq!((b.indices(), s), (&[1, 2][..], -1));
        assert!(sort_to_block(&[1, 1]).is_none());
        let (b, s) = sort_to_block(&[3, 1, 2]).unwrap();
        assert_eq!((b.indices(), s), (&[1, 2, 3][..], 1));
    }

    #[test]
    fn wedge_rank_is_position() {
        for dim in 0..7 {
            for size in 0..=dim {
                let w = WedgeBasis::new(dim, size);
                assert_eq!(w.len(), binomial(dim, size));
                for (i, s) in w.subsets().iter().enumerate() {
                    assert_eq!(w.rank(s), i);
                }
            }
        }
    }

    #[test]
    fn compositions_count() {
        // stars and bars: C(4+2, 2) = 15
        assert_eq!(compositions(4, 3, 4).len(), 15);
        assert!(compositions(3, 2, 2).iter().all(|c| c.iter().all(|&x| x <= 2)));
    }

    proptest! {
        #[test]
        fn shuffle_signs_match_inversions(i in 0usize..5, j in 0usize..5) {
            let all = shuffles(i, j);
            prop_assert_eq!(all.len(), binomial(i + j, i));
            for s in &all {
                prop_assert!(s.permutation[..i].windows(2).all(|w| w[0] < w[1]));
                prop_assert!(s.permutation[i..].windows(2).all(|w| w[0] < w[1]));
                // independent sign: parity of n minus number of cycles
                let n = s.permutation.len();
                let mut seen = vec![false; n];
                let mut cycles = 0;
                for start in 0..n {
                    if !seen[start] {
                        cycles += 1;
                        let mut x = start;
                        while !seen[x] {
                            seen[x] = true;
                            x = s.permutation[x];
                        }
                    }
                }
                let expected = if (n - cycles) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(s.sign, expected);
            }
        }
    }
}
