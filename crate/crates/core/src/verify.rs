//! Self-check suite behind `relfm verify`: every index operation is
//! compared against a brute-force answer on seeded or user-supplied text
//! pairs. A failing check is shrunk to a small counterexample.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;

use crate::bwtinv::{self, rel_locate, InvarianceChecker, InvariantAlignment, RelativeSample};
use crate::error::Result;
use crate::fmindex::FmIndex;
use crate::lcsalign::{self, partitioned_bwt_lcs, PartitionSpec};
use crate::relcount::RelativeIndex;
use crate::synth;
use crate::textcore::{build_suffix_array, Alphabet, Text};

/// Deliberate defects for checking that the suite catches them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Relative rank reports one too many at the last row.
    RelRankOffByOne,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub seeds: u64,
    pub fault: Option<Fault>,
    /// Checked instead of random pairs when given.
    pub pair: Option<(Text, Text)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 2000,
            seeds: 3,
            fault: None,
            pair: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub seed: u64,
    /// Counterexample description on failure.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let status = if o.failure.is_some() { "FAIL" } else { "ok" };
            let _ = writeln!(out, "check={} seed={} status={}", o.name, o.seed, status);
            if let Some(f) = &o.failure {
                for line in f.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        let failed = self.outcomes.iter().filter(|o| o.failure.is_some()).count();
        let _ = writeln!(out, "checks={} failed={}", self.outcomes.len(), failed);
        out
    }
}

type Check = fn(&Text, &Text, Option<Fault>) -> Option<String>;

const CHECKS: &[(&str, Check)] = &[
    ("suffix-array", check_suffix_array),
    ("bwt-inversion", check_inversion),
    ("lcs", check_lcs),
    ("rel-rank", check_rank),
    ("rel-count", check_count),
    ("invariance", check_invariance),
    ("rel-locate", check_locate),
];

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let cases: Vec<(u64, Text, Text)> = match &opts.pair {
        Some((a, b)) => vec![(0, a.clone(), b.clone())],
        None => (0..opts.seeds)
            .map(|seed| {
                let s1 = synth::random_dna(opts.n.max(1), seed);
                let s2 = synth::mutate(&s1, 0.01, 0.002, seed);
                let dna = Alphabet::dna();
                Ok((seed, Text::encode(&s1, &dna)?, Text::encode(&s2, &dna)?))
            })
            .collect::<Result<_>>()?,
    };
    for (seed, t1, t2) in &cases {
        for &(name, check) in CHECKS {
            let failure = check(t1, t2, opts.fault).map(|first| shrink(t1, t2, check, opts.fault, first));
            report.outcomes.push(CheckOutcome {
                name,
                seed: *seed,
                failure,
            });
        }
    }
    report.outcomes.push(CheckOutcome {
        name: "reduction",
        seed: 0,
        failure: check_reduction(5, 3),
    });
    Ok(report)
}

fn prefix(t: &Text, len: usize) -> Option<Text> {
    Text::from_codes(t.symbols()[..len].to_vec(), t.alphabet()).ok()
}

/// Repeatedly halves or trims either text while the check keeps failing.
fn shrink(t1: &Text, t2: &Text, check: Check, fault: Option<Fault>, first: String) -> String {
    let (mut a, mut b, mut why) = (t1.clone(), t2.clone(), first);
    for _ in 0..200 {
        let mut next = None;
        for (la, lb) in [
            (a.len() / 2, b.len()),
            (a.len(), b.len() / 2),
            (a.len() - 1, b.len()),
            (a.len(), b.len() - 1),
        ] {
            if la == 0 || lb == 0 || (la, lb) == (a.len(), b.len()) {
                continue;
            }
            let (Some(pa), Some(pb)) = (prefix(&a, la), prefix(&b, lb)) else {
                continue;
            };
            if let Some(w) = check(&pa, &pb, fault) {
                next = Some((pa, pb, w));
                break;
            }
        }
        match next {
            Some(n) => (a, b, why) = n,
            None => break,
        }
    }
    let show = |t: &Text| String::from_utf8_lossy(&t.to_bytes()).into_owned();
    format!("S1={}\nS2={}\n{}", show(&a), show(&b), why)
}

fn naive_suffix_order(s: &[u8]) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=s.len()).collect();
    order.sort_by(|&x, &y| s[x - 1..].cmp(&s[y - 1..]));
    order
}

fn naive_positions(text: &[u8], p: &[u8]) -> Vec<usize> {
    if p.is_empty() || p.len() > text.len() {
        return Vec::new();
    }
    text.windows(p.len())
        .enumerate()
        .filter(|(_, w)| *w == p)
        .map(|(k, _)| k + 1)
        .collect()
}

fn check_suffix_array(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    for t in [t1, t2] {
        let got = build_suffix_array(t);
        if got.order() != naive_suffix_order(t.symbols()).as_slice() {
            return Some(format!("suffix array differs from naive sort: {:?}", got.order()));
        }
    }
    None
}

fn check_inversion(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    for t in [t1, t2] {
        let ix = FmIndex::build(t, 3);
        if ix.text() != *t {
            return Some("text recovered from the BWT differs from the input".into());
        }
    }
    None
}

fn dp_lcs_len(x: &[u8], y: &[u8]) -> usize {
    let mut prev = vec![0usize; y.len() + 1];
    for &a in x {
        let mut cur = vec![0usize; y.len() + 1];
        for (j, &b) in y.iter().enumerate() {
            cur[j + 1] = if a == b { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        prev = cur;
    }
    prev[y.len()]
}

fn check_lcs(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    let x = FmIndex::build(t1, 8).bwt().to_vec();
    let y = FmIndex::build(t2, 8).bwt().to_vec();
    let (x, y) = (&x[..x.len().min(300)], &y[..y.len().min(300)]);
    let expect = dp_lcs_len(x, y);
    let exact = lcsalign::exact_lcs(x, y).ok()?;
    if exact.len() != expect || !exact.is_common_subsequence(x, y) {
        return Some(format!("exact LCS length {} but DP gives {expect}", exact.len()));
    }
    let greedy = lcsalign::greedy_lcs(x, y, usize::MAX);
    if greedy.len() != expect || !greedy.is_common_subsequence(x, y) {
        return Some(format!("greedy LCS length {} but DP gives {expect}", greedy.len()));
    }
    None
}

fn lcs_relative(t1: &Text, t2: &Text) -> Option<(RelativeIndex, FmIndex)> {
    let ix1 = Arc::new(FmIndex::build(t1, 8));
    let ix2 = FmIndex::build(t2, 8);
    let spec = PartitionSpec {
        max_block: 64,
        max_depth: 8,
        ..PartitionSpec::default()
    };
    let al = partitioned_bwt_lcs(&ix1, &ix2, &spec).ok()?;
    let ri = RelativeIndex::build(ix1, &ix2.bwt().to_vec(), &al).ok()?;
    Some((ri, ix2))
}

fn check_rank(t1: &Text, t2: &Text, fault: Option<Fault>) -> Option<String> {
    let Some((ri, ix2)) = lcs_relative(t1, t2) else {
        return Some("relative index construction failed".into());
    };
    let bwt2 = ix2.bwt().to_vec();
    let sigma = t1.alphabet().sigma() as u8;
    let mut counts = vec![0usize; sigma as usize];
    for i in 0..=bwt2.len() {
        if i > 0 {
            counts[bwt2[i - 1] as usize] += 1;
        }
        for a in 0..sigma {
            let mut got = ri.rel_rank(a, i).ok()?;
            if fault == Some(Fault::RelRankOffByOne) && i == bwt2.len() {
                got += 1;
            }
            if got != counts[a as usize] {
                return Some(format!("rel_rank({a}, {i}) = {got}, direct rank = {}", counts[a as usize]));
            }
        }
    }
    None
}

fn check_count(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    let (ri, ix2) = lcs_relative(t1, t2)?;
    let text2 = t2.to_bytes();
    let mut r = synth::rng(t2.len() as u64);
    for _ in 0..50 {
        let p = if r.gen_bool(0.8) {
            synth::sample_pattern(&text2, 1, 12, &mut r)
        } else {
            (0..r.gen_range(1..6)).map(|_| b"ACGT"[r.gen_range(0..4)]).collect()
        };
        let naive = naive_positions(&text2, &p).len();
        let (rel, alone) = (ri.rel_count(&p), ix2.count(&p));
        if rel != naive || alone != naive {
            let p = String::from_utf8_lossy(&p);
            return Some(format!("pattern {p}: relative {rel}, standalone {alone}, scan {naive}"));
        }
    }
    None
}

fn check_invariance(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    let g = bwtinv::invariant_subsequence(t1, t2).ok()?;
    match bwtinv::check_bwt_invariant(t1, t2, &g) {
        Ok(true) => None,
        Ok(false) => Some(format!("subsequence of length {} is not BWT-invariant", g.len())),
        Err(e) => Some(format!("subsequence rejected: {e}")),
    }
}

fn check_locate(t1: &Text, t2: &Text, _: Option<Fault>) -> Option<String> {
    let g = bwtinv::invariant_subsequence(t1, t2).ok()?;
    let al = InvarianceChecker::new(t1, t2).bwt_alignment(&g).ok()?;
    let ix1 = Arc::new(FmIndex::build(t1, 4));
    let ix2 = FmIndex::build(t2, 4);
    let ri = RelativeIndex::build(ix1.clone(), &ix2.bwt().to_vec(), &al).ok()?;
    let rs = RelativeSample::new(&g, ix1.rows(), ri.rows());
    let text2 = t2.to_bytes();
    let mut r = synth::rng(7 + t2.len() as u64);
    for _ in 0..30 {
        let p = synth::sample_pattern(&text2, 1, 8, &mut r);
        let got = rel_locate(&ri, &rs, ri.find(&p)).ok()?;
        let want = naive_positions(&text2, &p);
        if got != want {
            let p = String::from_utf8_lossy(&p);
            return Some(format!("pattern {p}: relative locate {got:?}, scan {want:?}"));
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

fn same_order(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| (a[x] < a[y]) == (b[x] < b[y])))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// For all permutation pairs up to the given sizes: pairing the `A`s of
/// the reduction strings is BWT-invariant exactly when the chosen blocks
/// of `p1` are order-isomorphic to `p2`.
fn check_reduction(max_n: usize, max_m: usize) -> Option<String> {
    for n in 1..=max_n {
        for p1 in permutations(n) {
            for m in 1..=max_m.min(n) {
                for p2 in permutations(m) {
                    let (s1, s2) = bwtinv::reduction_texts(&p1, &p2).ok()?;
                    let a_of = |t: &Text| -> Vec<usize> {
                        (1..=t.len()).filter(|&c| t.get(c) == t.get(1)).collect()
                    };
                    let (a1, a2) = (a_of(&s1), a_of(&s2));
                    let checker = InvarianceChecker::new(&s1, &s2);
                    for blocks in combinations(n, m) {
                        let g = InvariantAlignment::new(blocks.iter().map(|&k| a1[k]).collect(), a2.clone()).ok()?;
                        let invariant = checker.check(&g).ok()?;
                        let chosen: Vec<usize> = blocks.iter().map(|&k| p1[k]).collect();
                        if invariant != same_order(&chosen, &p2) {
                            return Some(format!(
                                "p1={p1:?} p2={p2:?} blocks={blocks:?}: invariant={invariant}"
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}
