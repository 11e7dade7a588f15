//! Suffix array construction by induced sorting (SA-IS).
//!
//! Input must end with a unique smallest symbol (0). Output is 0-based.

const EMPTY: usize = usize::MAX;

pub(crate) fn sais(s: &[u32], sigma: usize) -> Vec<usize> {
    let n = s.len();
    debug_assert!(n > 0 && s[n - 1] == 0);
    if n == 1 {
        return vec![0];
    }

    // true = S-type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0usize; sigma];
    for &c in s {
        counts[c as usize] += 1;
    }
    let bucket_heads = || {
        let mut acc = 0;
        counts
            .iter()
            .map(|&c| {
                let h = acc;
                acc += c;
                h
            })
            .collect::<Vec<_>>()
    };
    let bucket_tails = || {
        let mut acc = 0;
        counts
            .iter()
            .map(|&c| {
                acc += c;
                acc
            })
            .collect::<Vec<_>>()
    };

    let induce = |sa: &mut [usize]| {
        let mut heads = bucket_heads();
        for j in 0..n {
            let i = sa[j];
            if i != EMPTY && i > 0 && !stype[i - 1] {
                let c = s[i - 1] as usize;
                sa[heads[c]] = i - 1;
                heads[c] += 1;
            }
        }
        let mut tails = bucket_tails();
        for j in (0..n).rev() {
            let i = sa[j];
            if i != EMPTY && i > 0 && stype[i - 1] {
                let c = s[i - 1] as usize;
                tails[c] -= 1;
                sa[tails[c]] = i - 1;
            }
        }
    };

    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_tails();
    let lms_positions: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    for &i in lms_positions.iter().rev() {
        let c = s[i] as usize;
        tails[c] -= 1;
        sa[tails[c]] = i;
    }
    induce(&mut sa);

    // Name LMS substrings in their induced order.
    let lms_equal = |a: usize, b: usize| -> bool {
        if a == n - 1 || b == n - 1 {
            return false;
        }
        let mut d = 0;
        loop {
            if s[a + d] != s[b + d] || stype[a + d] != stype[b + d] {
                return false;
            }
            if d > 0 {
                let (ea, eb) = (is_lms(a + d), is_lms(b + d));
                if ea || eb {
                    return ea && eb;
                }
            }
            d += 1;
        }
    };
    let mut names = vec![EMPTY; n];
    let mut name = 0usize;
    let mut prev = EMPTY;
    for &p in sa.iter().filter(|&&p| is_lms(p)) {
        if prev == EMPTY || !lms_equal(prev, p) {
            name += 1;
        }
        names[p] = name - 1;
        prev = p;
    }

    let reduced: Vec<u32> = lms_positions.iter().map(|&p| names[p] as u32).collect();
    let reduced_sa = if name < reduced.len() {
        sais(&reduced, name)
    } else {
        let mut r = vec![0; reduced.len()];
        for (idx, &c) in reduced.iter().enumerate() {
            r[c as usize] = idx;
        }
        r
    };

    sa.fill(EMPTY);
    let mut tails = bucket_tails();
    for &idx in reduced_sa.iter().rev() {
        let p = lms_positions[idx];
        let c = s[p] as usize;
        tails[c] -= 1;
        sa[tails[c]] = p;
    }
    induce(&mut sa);
    sa
}
