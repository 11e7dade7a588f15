//! Greedy O(ND) shortest-edit-script LCS in linear space (middle-snake
//! divide and conquer).

/// Matched index pairs (0-based, with the given offsets applied).
pub(crate) type Matches = Vec<(usize, usize)>;

/// Diagonal run from `(x, y)` to `(u, v)` on a path with `d` edits.
struct Snake {
    x: usize,
    y: usize,
    u: usize,
    v: usize,
    d: usize,
}

/// Finds the middle snake of an optimal edit path. Gives up with `None`
/// once the edit distance is known to exceed `max_d`.
fn middle_snake(a: &[u8], b: &[u8], max_d: usize, vf: &mut [isize], vb: &mut [isize]) -> Option<Snake> {
    let n = a.len() as isize;
    let m = b.len() as isize;
    let delta = n - m;
    let odd = delta & 1 != 0;
    let offset = (vf.len() / 2) as isize;
    let at = |k: isize| (k + offset) as usize;
    vf[at(1)] = 0;
    vb[at(1)] = 0;
    let dmax = (n + m + 1) / 2;
    for d in 0..=dmax {
        if d > 0 && (2 * d - 1) as usize > max_d {
            return None;
        }
        let mut k = -d;
        while k <= d {
            let mut x = if k == -d || (k != d && vf[at(k - 1)] < vf[at(k + 1)]) {
                vf[at(k + 1)]
            } else {
                vf[at(k - 1)] + 1
            };
            let mut y = x - k;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[x as usize] == b[y as usize] {
                x += 1;
                y += 1;
            }
            vf[at(k)] = x;
            let kr = delta - k;
            if odd && kr > -d && kr < d && vf[at(k)] + vb[at(kr)] >= n {
                return Some(Snake {
                    x: x0 as usize,
                    y: y0 as usize,
                    u: x as usize,
                    v: y as usize,
                    d: (2 * d - 1) as usize,
                });
            }
            k += 2;
        }
        if (2 * d) as usize > max_d {
            return None;
        }
        let mut k = -d;
        while k <= d {
            let mut x = if k == -d || (k != d && vb[at(k - 1)] < vb[at(k + 1)]) {
                vb[at(k + 1)]
            } else {
                vb[at(k - 1)] + 1
            };
            let mut y = x - k;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[(n - 1 - x) as usize] == b[(m - 1 - y) as usize] {
                x += 1;
                y += 1;
            }
            vb[at(k)] = x;
            let kf = delta - k;
            if !odd && kf >= -d && kf <= d && vb[at(k)] + vf[at(kf)] >= n {
                return Some(Snake {
                    x: (n - x) as usize,
                    y: (m - y) as usize,
                    u: (n - x0) as usize,
                    v: (m - y0) as usize,
                    d: (2 * d) as usize,
                });
            }
            k += 2;
        }
    }
    unreachable!("an edit path of length at most n + m always exists")
}

fn vectors(n: usize, m: usize) -> (Vec<isize>, Vec<isize>) {
    let size = 2 * (n + m + 2) + 1;
    (vec![0; size], vec![0; size])
}

fn recurse(a: &[u8], b: &[u8], ao: usize, bo: usize, out: &mut Matches) {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    out.extend((0..prefix).map(|i| (ao + i, bo + i)));
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let (ao, bo) = (ao + prefix, bo + prefix);
    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    let (ia, ib) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);
    if !ia.is_empty() && !ib.is_empty() {
        let (mut vf, mut vb) = vectors(ia.len(), ib.len());
        let s = middle_snake(ia, ib, usize::MAX, &mut vf, &mut vb).expect("unbounded search");
        drop((vf, vb));
        recurse(&ia[..s.x], &ib[..s.y], ao, bo, out);
        out.extend((0..s.u - s.x).map(|i| (ao + s.x + i, bo + s.y + i)));
        recurse(&ia[s.u..], &ib[s.v..], ao + s.u, bo + s.v, out);
    }
    let (sa, sb) = (ao + ia.len(), bo + ib.len());
    out.extend((0..suffix).map(|i| (sa + i, sb + i)));
}

/// Shortest edit script length (insertions + deletions), or `None` if it
/// exceeds `max_d`.
pub(crate) fn edit_distance(a: &[u8], b: &[u8], max_d: usize) -> Option<usize> {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[prefix..], &b[prefix..]);
    if a.is_empty() || b.is_empty() {
        let d = a.len() + b.len();
        return (d <= max_d).then_some(d);
    }
    let (mut vf, mut vb) = vectors(a.len(), b.len());
    middle_snake(a, b, max_d, &mut vf, &mut vb).map(|s| s.d)
}

/// LCS matches of `a` and `b` if their edit distance is at most `max_d`.
pub(crate) fn lcs_matches(a: &[u8], b: &[u8], max_d: usize) -> Option<Matches> {
    edit_distance(a, b, max_d)?;
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    recurse(a, b, 0, 0, &mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp_len(a: &[u8], b: &[u8]) -> usize {
        let mut prev = vec![0usize; b.len() + 1];
        for &x in a {
            let mut cur = vec![0usize; b.len() + 1];
            for (j, &y) in b.iter().enumerate() {
                cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
            }
            prev = cur;
        }
        prev[b.len()]
    }

    fn check(a: &[u8], b: &[u8]) {
        let m = lcs_matches(a, b, usize::MAX).unwrap();
        assert_eq!(m.len(), dp_len(a, b), "{a:?} {b:?}");
        for w in m.windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
        }
        for &(i, j) in &m {
            assert_eq!(a[i], b[j]);
        }
        let d = edit_distance(a, b, usize::MAX).unwrap();
        assert_eq!(d, a.len() + b.len() - 2 * m.len());
    }

    #[test]
    fn classic_example() {
        check(b"ABCABBA", b"CBABAC");
        assert_eq!(edit_distance(b"ABCABBA", b"CBABAC", usize::MAX), Some(5));
        assert_eq!(edit_distance(b"ABCABBA", b"CBABAC", 4), None);
    }

    #[test]
    fn degenerate_inputs() {
        check(b"", b"");
        check(b"A", b"");
        check(b"", b"AB");
        check(b"AAAA", b"AAAA");
        check(b"AAAA", b"BBBB");
        check(b"A", b"B");
        check(b"AB", b"BA");
    }

    #[test]
    fn random_pairs_match_dp() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..2000 {
            let sigma = 1 + next() % 4;
            let la = next() % 40;
            let lb = next() % 40;
            let a: Vec<u8> = (0..la).map(|_| (next() % sigma) as u8).collect();
            let b: Vec<u8> = (0..lb).map(|_| (next() % sigma) as u8).collect();
            check(&a, &b);
        }
    }
}
