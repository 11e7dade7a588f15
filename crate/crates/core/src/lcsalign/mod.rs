//! Common subsequences of two symbol sequences (in practice, two BWTs):
//! an exact quadratic DP, the greedy O(ND) method with a diagonal cutoff,
//! a most-common-symbol fallback, and the prefix-partitioned approximation
//! that scales to large BWTs.

mod myers;
mod partition;

pub use partition::{partition_leaves, partitioned_bwt_lcs, Leaf, LeafStrategy};

use crate::error::{Error, Result};

/// Largest `|X| * |Y|` accepted by [`exact_lcs`].
pub const EXACT_LCS_MAX_CELLS: u128 = 100_000_000;

/// Paired, strictly increasing 1-based positions into two sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    x_pos: Vec<usize>,
    y_pos: Vec<usize>,
}

impl Alignment {
    /// Checks shape (equal lengths, strictly increasing, 1-based) but not
    /// symbol equality; see [`Alignment::validate`].
    pub fn new(x_pos: Vec<usize>, y_pos: Vec<usize>) -> Result<Self> {
        if x_pos.len() != y_pos.len() {
            return Err(Error::InvalidAlignment(format!(
                "{} positions in X but {} in Y",
                x_pos.len(),
                y_pos.len()
            )));
        }
        for side in [&x_pos, &y_pos] {
            if side.first() == Some(&0) || side.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidAlignment(
                    "positions must be 1-based and strictly increasing".into(),
                ));
            }
        }
        Ok(Alignment { x_pos, y_pos })
    }

    pub fn identity(len: usize) -> Self {
        Alignment {
            x_pos: (1..=len).collect(),
            y_pos: (1..=len).collect(),
        }
    }

    pub(crate) fn from_matches(matches: &[(usize, usize)], x_off: usize, y_off: usize) -> Self {
        let (x_pos, y_pos) = matches
            .iter()
            .map(|&(i, j)| (x_off + i + 1, y_off + j + 1))
            .unzip();
        Alignment { x_pos, y_pos }
    }

    pub fn len(&self) -> usize {
        self.x_pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_pos.is_empty()
    }

    pub fn x_pos(&self) -> &[usize] {
        &self.x_pos
    }

    pub fn y_pos(&self) -> &[usize] {
        &self.y_pos
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.x_pos.iter().copied().zip(self.y_pos.iter().copied())
    }

    /// Appends `other`, shifting its positions by the given offsets.
    pub fn append_shifted(&mut self, other: &Alignment, x_off: usize, y_off: usize) {
        self.x_pos.extend(other.x_pos.iter().map(|p| p + x_off));
        self.y_pos.extend(other.y_pos.iter().map(|p| p + y_off));
    }

    /// Verifies that this is a common subsequence of `x` and `y`.
    pub fn validate(&self, x: &[u8], y: &[u8]) -> Result<()> {
        let fail = |msg: String| Err(Error::NotCommonSubsequence(msg));
        if self.x_pos.len() != self.y_pos.len() {
            return fail("unequal position counts".into());
        }
        let mut last = (0, 0);
        for (k, (i, j)) in self.pairs().enumerate() {
            if i <= last.0 || j <= last.1 {
                return fail(format!("pair {} ({i}, {j}) is not increasing", k + 1));
            }
            if i > x.len() || j > y.len() {
                return fail(format!("pair {} ({i}, {j}) out of bounds", k + 1));
            }
            if x[i - 1] != y[j - 1] {
                return fail(format!("pair {} ({i}, {j}) joins different symbols", k + 1));
            }
            last = (i, j);
        }
        Ok(())
    }

    pub fn is_common_subsequence(&self, x: &[u8], y: &[u8]) -> bool {
        self.validate(x, y).is_ok()
    }
}

/// Partitioning and cutoff parameters for [`partitioned_bwt_lcs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    /// A partition is final once either side has at most this many rows.
    pub max_block: usize,
    /// Longest partitioning prefix.
    pub max_depth: usize,
    /// Greedy LCS gives up beyond this many edits.
    pub max_diag: usize,
    /// Length difference above which a partition skips the greedy attempt.
    pub hard_gap: usize,
}

impl Default for PartitionSpec {
    fn default() -> Self {
        PartitionSpec {
            max_block: 1024,
            max_depth: 32,
            max_diag: 50_000,
            hard_gap: 50_000,
        }
    }
}

impl PartitionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_block == 0 || self.max_depth == 0 || self.max_diag == 0 || self.hard_gap == 0 {
            return Err(Error::InvalidAlignment(
                "partition parameters must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A longest common subsequence by quadratic DP, preferring to skip a
/// symbol of `x` over a symbol of `y` when both are optimal.
pub fn exact_lcs(x: &[u8], y: &[u8]) -> Result<Alignment> {
    let (n, m) = (x.len(), y.len());
    let cells = n as u128 * m as u128;
    if cells > EXACT_LCS_MAX_CELLS {
        return Err(Error::InputTooLarge { cells });
    }
    // prefer_x[i * m + j]: skipping x[i] is at least as good as skipping y[j].
    let mut prefer_x = vec![0u64; (n * m).div_ceil(64)];
    let mut next = vec![0u32; m + 1];
    let mut cur = vec![0u32; m + 1];
    for i in (0..n).rev() {
        cur[m] = 0;
        for j in (0..m).rev() {
            cur[j] = if x[i] == y[j] {
                next[j + 1] + 1
            } else if next[j] >= cur[j + 1] {
                let bit = i * m + j;
                prefer_x[bit / 64] |= 1 << (bit % 64);
                next[j]
            } else {
                cur[j + 1]
            };
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut matches = Vec::with_capacity(next[0] as usize);
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if x[i] == y[j] {
            matches.push((i, j));
            i += 1;
            j += 1;
        } else {
            let bit = i * m + j;
            if (prefer_x[bit / 64] >> (bit % 64)) & 1 == 1 {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    Ok(Alignment::from_matches(&matches, 0, 0))
}

/// Greedy O(ND) LCS; falls back to [`common_run`] when more than `max_diag`
/// edits would be needed.
pub fn greedy_lcs(x: &[u8], y: &[u8], max_diag: usize) -> Alignment {
    greedy_lcs_bounded(x, y, max_diag).unwrap_or_else(|| common_run(x, y))
}

/// Greedy O(ND) LCS, or `None` when the edit distance exceeds `max_diag`.
pub fn greedy_lcs_bounded(x: &[u8], y: &[u8], max_diag: usize) -> Option<Alignment> {
    myers::lcs_matches(x, y, max_diag).map(|m| Alignment::from_matches(&m, 0, 0))
}

/// Indel edit distance between `x` and `y`, if at most `max_d`.
pub fn edit_distance(x: &[u8], y: &[u8], max_d: usize) -> Option<usize> {
    myers::edit_distance(x, y, max_d)
}

/// Matches only the symbol `a` maximising `min(count_a(x), count_a(y))`
/// (smallest code on ties), pairing its first occurrences on both sides.
pub fn common_run(x: &[u8], y: &[u8]) -> Alignment {
    let mut cx = [0usize; 256];
    let mut cy = [0usize; 256];
    for &c in x {
        cx[c as usize] += 1;
    }
    for &c in y {
        cy[c as usize] += 1;
    }
    let mut best = (0usize, 0u8);
    for a in 0..256 {
        let take = cx[a].min(cy[a]);
        if take > best.0 {
            best = (take, a as u8);
        }
    }
    let (take, a) = best;
    let occurrences = |s: &[u8]| -> Vec<usize> {
        s.iter()
            .enumerate()
            .filter(|&(_, &c)| c == a)
            .map(|(i, _)| i + 1)
            .take(take)
            .collect()
    };
    Alignment {
        x_pos: occurrences(x),
        y_pos: occurrences(y),
    }
}

/// `(n1 + 1) + (n2 + 1) - 2 * len`: the BW-distance when `alignment` is an
/// LCS of the two sentinel-terminated BWTs, an upper bound otherwise.
pub fn bw_distance(n1: usize, n2: usize, alignment: &Alignment) -> Result<usize> {
    let (l1, l2) = (n1 + 1, n2 + 1);
    let len = alignment.len();
    if len > l1.min(l2) {
        return Err(Error::InvalidAlignment(format!(
            "alignment of length {len} exceeds a BWT of length {}",
            l1.min(l2)
        )));
    }
    Ok(l1 + l2 - 2 * len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn memo_lcs(x: &[u8], y: &[u8]) -> usize {
        fn go(x: &[u8], y: &[u8], i: usize, j: usize, memo: &mut Vec<Vec<Option<usize>>>) -> usize {
            if i == x.len() || j == y.len() {
                return 0;
            }
            if let Some(v) = memo[i][j] {
                return v;
            }
            let v = if x[i] == y[j] {
                1 + go(x, y, i + 1, j + 1, memo)
            } else {
                go(x, y, i + 1, j, memo).max(go(x, y, i, j + 1, memo))
            };
            memo[i][j] = Some(v);
            v
        }
        let mut memo = vec![vec![None; y.len()]; x.len()];
        go(x, y, 0, 0, &mut memo)
    }

    #[test]
    fn exact_small_examples() {
        let a = exact_lcs(b"BB$AA", b"B$BBA").unwrap();
        assert_eq!(a.len(), 3);
        a.validate(b"BB$AA", b"B$BBA").unwrap();
        assert_eq!(a.x_pos(), &[1, 3, 5]);
        assert_eq!(a.y_pos(), &[1, 2, 5]);

        assert_eq!(exact_lcs(b"ABCDE", b"ABCDE").unwrap(), Alignment::identity(5));
        assert!(exact_lcs(b"AAA", b"BBB").unwrap().is_empty());
    }

    #[test]
    fn exact_guard() {
        let big = vec![1u8; 10_001];
        assert!(matches!(exact_lcs(&big, &big), Err(Error::InputTooLarge { .. })));
    }

    #[test]
    fn exact_matches_memo() {
        let mut state = 99u64;
        for _ in 0..300 {
            let mut gen = |len: usize| -> Vec<u8> {
                (0..len)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                        ((state >> 40) % 3) as u8
                    })
                    .collect()
            };
            let x = gen(30);
            let y = gen(25);
            let a = exact_lcs(&x, &y).unwrap();
            a.validate(&x, &y).unwrap();
            assert_eq!(a.len(), memo_lcs(&x, &y));
        }
    }

    #[test]
    fn greedy_examples() {
        let a = greedy_lcs(b"ABCABBA", b"CBABAC", usize::MAX);
        assert_eq!(a.len(), 4);
        a.validate(b"ABCABBA", b"CBABAC").unwrap();
        assert_eq!(edit_distance(b"ACGT", b"ACGT", 0), Some(0));
        assert_eq!(greedy_lcs(b"ACGT", b"ACGT", 0), Alignment::identity(4));
        let x = vec![b'A'; 100];
        let y = vec![b'B'; 100];
        assert!(greedy_lcs_bounded(&x, &y, 10).is_none());
        assert!(greedy_lcs(&x, &y, 10).is_empty());
    }

    #[test]
    fn common_run_examples() {
        let a = common_run(b"AABA", b"BAAA");
        assert_eq!(a.len(), 3);
        a.validate(b"AABA", b"BAAA").unwrap();
        assert!(common_run(b"AAA", b"CCC").is_empty());
        let t = common_run(b"AB", b"AB");
        assert_eq!((t.len(), t.x_pos()), (1, &[1][..]));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(bw_distance(4, 4, &Alignment::identity(5)).unwrap(), 0);
        let a = exact_lcs(b"BB$AA", b"B$BBA").unwrap();
        assert_eq!(bw_distance(4, 4, &a).unwrap(), 4);
        assert!(bw_distance(2, 9, &Alignment::identity(4)).is_err());
    }

    #[test]
    fn alignment_shape_checks() {
        assert!(Alignment::new(vec![1, 2], vec![1]).is_err());
        assert!(Alignment::new(vec![2, 2], vec![1, 3]).is_err());
        assert!(Alignment::new(vec![0], vec![1]).is_err());
        let a = Alignment::new(vec![1, 3], vec![2, 3]).unwrap();
        assert!(a.is_common_subsequence(b"ABC", b"XAC"));
        assert!(!a.is_common_subsequence(b"ABC", b"XAD"));
        assert!(!a.is_common_subsequence(b"AB", b"XAC"));
    }
}
