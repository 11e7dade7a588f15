//! Brute-force references shared by the integration tests. None of these
//! call into the library's algorithms.

#![allow(dead_code)]

use std::collections::HashMap;

/// 1-based suffix order by direct comparison of all suffixes.
pub fn naive_suffix_order(s: &[u8]) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=s.len()).collect();
    order.sort_by(|&x, &y| s[x - 1..].cmp(&s[y - 1..]));
    order
}

/// BWT of a sentinel-terminated symbol sequence via the naive order.
pub fn naive_bwt(s: &[u8]) -> Vec<u8> {
    naive_suffix_order(s)
        .into_iter()
        .map(|p| if p == 1 { s[s.len() - 1] } else { s[p - 2] })
        .collect()
}

/// Recovers the text (sentinel last) from a BWT whose sentinel is code 0
/// and whose first row is the sentinel suffix.
pub fn invert_bwt(bwt: &[u8]) -> Vec<u8> {
    let mut by_first: Vec<usize> = (0..bwt.len()).collect();
    by_first.sort_by_key(|&k| bwt[k]);
    let mut lf = vec![0; bwt.len()];
    for (f, &k) in by_first.iter().enumerate() {
        lf[k] = f;
    }
    let mut out = Vec::with_capacity(bwt.len());
    let mut row = 0;
    for _ in 1..bwt.len() {
        out.push(bwt[row]);
        row = lf[row];
    }
    out.reverse();
    out.push(0);
    out
}

pub fn naive_positions(text: &[u8], p: &[u8]) -> Vec<usize> {
    if p.is_empty() || p.len() > text.len() {
        return Vec::new();
    }
    text.windows(p.len())
        .enumerate()
        .filter(|(_, w)| *w == p)
        .map(|(k, _)| k + 1)
        .collect()
}

pub fn naive_rank(s: &[u8], a: u8, i: usize) -> usize {
    s[..i].iter().filter(|&&c| c == a).count()
}

/// LCS length by bit-parallel row updates (64 cells per word operation).
pub fn bitparallel_lcs_len(x: &[u8], y: &[u8]) -> usize {
    let words = y.len().div_ceil(64);
    let mut masks: HashMap<u8, Vec<u64>> = HashMap::new();
    for (j, &c) in y.iter().enumerate() {
        masks.entry(c).or_insert_with(|| vec![0; words])[j / 64] |= 1 << (j % 64);
    }
    let zero = vec![0u64; words];
    let mut v = vec![u64::MAX; words];
    for c in x {
        let m = masks.get(c).unwrap_or(&zero);
        let mut carry = 0u64;
        for k in 0..words {
            let u = v[k] & m[k];
            let (s1, c1) = v[k].overflowing_add(u);
            let (s2, c2) = s1.overflowing_add(carry);
            carry = (c1 || c2) as u64;
            v[k] = s2 | (v[k] - u);
        }
    }
    let mut zeros = 0;
    for (k, w) in v.iter().enumerate() {
        let bits = if k + 1 == words && !y.len().is_multiple_of(64) { y.len() % 64 } else { 64 };
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        zeros += (!w & mask).count_ones() as usize;
    }
    zeros
}

/// Top-down memoised LCS length.
pub fn memo_lcs_len(x: &[u8], y: &[u8]) -> usize {
    fn go(x: &[u8], y: &[u8], i: usize, j: usize, memo: &mut [Vec<u32>]) -> u32 {
        if i == x.len() || j == y.len() {
            return 0;
        }
        if memo[i][j] != u32::MAX {
            return memo[i][j];
        }
        let v = if x[i] == y[j] {
            1 + go(x, y, i + 1, j + 1, memo)
        } else {
            go(x, y, i + 1, j, memo).max(go(x, y, i, j + 1, memo))
        };
        memo[i][j] = v;
        v
    }
    let mut memo = vec![vec![u32::MAX; y.len()]; x.len()];
    go(x, y, 0, 0, &mut memo) as usize
}

/// Longest strictly increasing chain taking at most one of the two values
/// at each index, by trying every skip/first/second choice.
pub fn brute_two_choice(entries: &[(Option<usize>, Option<usize>)]) -> usize {
    fn go(entries: &[(Option<usize>, Option<usize>)], k: usize, last: usize, len: usize, best: &mut usize) {
        if k == entries.len() {
            *best = (*best).max(len);
            return;
        }
        go(entries, k + 1, last, len, best);
        for v in [entries[k].0, entries[k].1].into_iter().flatten() {
            if v > last {
                go(entries, k + 1, v, len + 1, best);
            }
        }
    }
    let mut best = 0;
    go(entries, 0, 0, 0, &mut best);
    best
}

/// All increasing index subsets of size `k` from `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    fn go(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(p, k + 1, out);
            p.swap(k, i);
        }
    }
    go(&mut p, 0, &mut out);
    out
}

pub fn order_isomorphic(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|x| (0..a.len()).all(|y| (a[x] < a[y]) == (b[x] < b[y])))
}

/// Whether `p2` occurs as a pattern in `p1`.
pub fn pattern_occurs(p1: &[usize], p2: &[usize]) -> bool {
    subsets(p1.len(), p2.len()).iter().any(|idx| {
        let sub: Vec<usize> = idx.iter().map(|&i| p1[i]).collect();
        order_isomorphic(&sub, p2)
    })
}

/// Row (1-based) of every suffix start, from the naive order.
pub fn naive_inverse(s: &[u8]) -> Vec<usize> {
    let order = naive_suffix_order(s);
    let mut inv = vec![0; s.len()];
    for (r, &p) in order.iter().enumerate() {
        inv[p - 1] = r + 1;
    }
    inv
}

/// BWT row of character `c` (1-based, sentinel included).
pub fn naive_row_of_char(inv: &[usize], c: usize) -> usize {
    if c == inv.len() {
        inv[0]
    } else {
        inv[c]
    }
}

/// Invariance by definition: sorting the pairs by their row in `BWT(S1)`
/// must also sort them by their row in `BWT(S2)`.
pub fn naive_is_invariant(s1: &[u8], s2: &[u8], i_pos: &[usize], j_pos: &[usize]) -> bool {
    let (inv1, inv2) = (naive_inverse(s1), naive_inverse(s2));
    let mut pairs: Vec<(usize, usize)> = i_pos
        .iter()
        .zip(j_pos)
        .map(|(&i, &j)| (naive_row_of_char(&inv1, i), naive_row_of_char(&inv2, j)))
        .collect();
    pairs.sort();
    pairs.windows(2).all(|w| w[0].1 < w[1].1)
}

/// Candidate partners computed from the merged order of all suffixes of
/// both sentinel-terminated texts (ties: the `S2` suffix first).
pub fn naive_candidates(s1: &[u8], s2: &[u8]) -> Vec<(Option<usize>, Option<usize>)> {
    // (text, start)
    let mut all: Vec<(u8, usize)> = (1..=s1.len()).map(|p| (1, p)).chain((1..=s2.len()).map(|p| (2, p))).collect();
    let suffix = |t: u8, p: usize| if t == 1 { &s1[p - 1..] } else { &s2[p - 1..] };
    all.sort_by(|a, b| suffix(a.0, a.1).cmp(suffix(b.0, b.1)).then(b.0.cmp(&a.0)));
    let preceding = |p: usize, len: usize| if p == 1 { len } else { p - 1 };
    let mut out = vec![(None, None); s1.len()];
    for (k, &(t, p)) in all.iter().enumerate() {
        if t != 1 {
            continue;
        }
        let c = preceding(p, s1.len());
        if let Some(&(2, q)) = all.get(k + 1) {
            let j = preceding(q, s2.len());
            if s1[c - 1] == s2[j - 1] {
                out[c - 1].0 = Some(j);
            }
        }
        if let Some(&(_, q)) = all[..k].iter().rev().find(|e| e.0 == 2) {
            let j = preceding(q, s2.len());
            if s1[c - 1] == s2[j - 1] {
                out[c - 1].1 = Some(j);
            }
        }
    }
    out
}

/// Small seeded generator so test inputs do not depend on library code.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn dna(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| b"ACGT"[self.below(4)]).collect()
    }
}
