mod common;

use std::sync::Arc;

use proptest::prelude::*;
use relfm::bwtinv::{
    build_candidates, check_bwt_invariant, invariant_subsequence, reduction_texts, rel_locate, two_choice_lis,
    InvarianceChecker, InvariantAlignment, RelativeSample, TwoChoiceArray,
};
use relfm::lcsalign::{bw_distance, exact_lcs, greedy_lcs, partitioned_bwt_lcs, PartitionSpec};
use relfm::textcore::{build_suffix_array, load_text_pair, Format};
use relfm::{Alphabet, FmIndex, RelativeIndex, Text};

use common::*;

fn dna(s: &[u8]) -> Text {
    Text::encode(s, &Alphabet::dna()).unwrap()
}

fn dna_strategy(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(b"ACGT".to_vec()), 1..max)
}

fn mutated(s: &[u8], edits: &[(usize, u8, u8)]) -> Vec<u8> {
    let mut out = s.to_vec();
    for &(pos, kind, base) in edits {
        if out.len() <= 1 {
            break;
        }
        let p = pos % out.len();
        let b = b"ACGT"[base as usize % 4];
        match kind % 3 {
            0 => out[p] = b,
            1 => {
                out.remove(p);
            }
            _ => out.insert(p, b),
        }
    }
    out
}

fn pair_strategy(max: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (dna_strategy(max), prop::collection::vec((0usize..10_000, 0u8..3, 0u8..4), 0..8))
        .prop_map(|(s, e)| {
            let t = mutated(&s, &e);
            (s, t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn suffix_array_matches_naive_sort(s in prop::collection::vec(0u8..4, 1..300)) {
        let codes: Vec<u8> = s.iter().map(|c| c + 1).collect();
        let t = Text::from_codes(codes, &Alphabet::dna()).unwrap();
        let sa = build_suffix_array(&t);
        prop_assert_eq!(sa.order().to_vec(), naive_suffix_order(t.symbols()));
    }

    #[test]
    fn bwt_round_trips(s in dna_strategy(300)) {
        let t = dna(&s);
        let ix = FmIndex::build(&t, 5);
        let bwt = ix.bwt().to_vec();
        prop_assert_eq!(&bwt, &naive_bwt(t.symbols()));
        prop_assert_eq!(invert_bwt(&bwt), t.symbols().to_vec());
        prop_assert_eq!(ix.text(), t);
    }

    #[test]
    fn standalone_queries_match_scan(s in dna_strategy(200), p in dna_strategy(5), rate in 1usize..9) {
        let ix = FmIndex::build(&dna(&s), rate);
        prop_assert_eq!(ix.locate(ix.find(&p)), naive_positions(&s, &p));
        let (i, j) = (1 + s.len() / 3, s.len());
        prop_assert_eq!(ix.extract(i, j).unwrap(), s[i - 1..j].to_vec());
    }

    #[test]
    fn exact_and_greedy_lcs_match_memo(x in prop::collection::vec(0u8..3, 0..120), y in prop::collection::vec(0u8..3, 0..120)) {
        let memo = memo_lcs_len(&x, &y);
        let exact = exact_lcs(&x, &y).unwrap();
        prop_assert!(exact.is_common_subsequence(&x, &y));
        prop_assert_eq!(exact.len(), memo);
        let greedy = greedy_lcs(&x, &y, usize::MAX);
        prop_assert!(greedy.is_common_subsequence(&x, &y));
        prop_assert_eq!(greedy.len(), memo);
        prop_assert_eq!(bitparallel_lcs_len(&x, &y), memo);
        let capped = greedy_lcs(&x, &y, 3);
        prop_assert!(capped.is_common_subsequence(&x, &y));
    }

    #[test]
    fn partitioned_lcs_is_valid_and_bounded((s1, s2) in pair_strategy(250), block in 1usize..20, depth in 1usize..6) {
        let (a, b) = (FmIndex::build(&dna(&s1), 4), FmIndex::build(&dna(&s2), 4));
        let spec = PartitionSpec { max_block: block, max_depth: depth, max_diag: 16, hard_gap: 8 };
        let al = partitioned_bwt_lcs(&a, &b, &spec).unwrap();
        let (x, y) = (a.bwt().to_vec(), b.bwt().to_vec());
        prop_assert!(al.is_common_subsequence(&x, &y));
        prop_assert!(al.len() <= memo_lcs_len(&x, &y));
        let d = bw_distance(s1.len(), s2.len(), &al).unwrap();
        prop_assert!(d >= s1.len().abs_diff(s2.len()));
    }

    #[test]
    fn relative_rank_and_count_match_direct((s1, s2) in pair_strategy(300), pats in prop::collection::vec(dna_strategy(6), 1..10)) {
        let ix1 = Arc::new(FmIndex::build(&dna(&s1), 4));
        let ix2 = FmIndex::build(&dna(&s2), 4);
        let bwt2 = ix2.bwt().to_vec();
        let al = exact_lcs(&ix1.bwt().to_vec(), &bwt2).unwrap();
        let ri = RelativeIndex::build(ix1, &bwt2, &al).unwrap();
        for i in 0..=bwt2.len() {
            for a in 0..6u8 {
                prop_assert_eq!(ri.rel_rank(a, i).unwrap(), naive_rank(&bwt2, a, i));
            }
        }
        for a in 0..6u8 {
            prop_assert_eq!(ri.rel_cumulative(a).unwrap(), bwt2.iter().filter(|&&c| c < a).count());
        }
        for p in &pats {
            prop_assert_eq!(ri.rel_count(p), naive_positions(&s2, p).len());
        }
    }

    #[test]
    fn candidates_match_merged_order((s1, s2) in pair_strategy(120)) {
        let (t1, t2) = (dna(&s1), dna(&s2));
        let got = build_candidates(&t1, &t2).unwrap();
        let want = naive_candidates(t1.symbols(), t2.symbols());
        prop_assert_eq!(got, TwoChoiceArray::from_entries(&want));
    }

    #[test]
    fn two_choice_lis_matches_brute_force(entries in prop::collection::vec((prop::option::of(1usize..15), prop::option::of(1usize..15)), 0..11)) {
        let a = TwoChoiceArray::from_entries(&entries);
        let sel = two_choice_lis(&a);
        prop_assert_eq!(sel.len(), brute_two_choice(&entries));
        for w in sel.windows(2) {
            prop_assert!(w[0].i < w[1].i && w[0].value < w[1].value);
        }
        for c in &sel {
            prop_assert_eq!(a.get(c.i, c.b), Some(c.value));
        }
    }

    #[test]
    fn invariant_subsequence_is_invariant((s1, s2) in pair_strategy(200)) {
        let (t1, t2) = (dna(&s1), dna(&s2));
        let g = invariant_subsequence(&t1, &t2).unwrap();
        prop_assert!(check_bwt_invariant(&t1, &t2, &g).unwrap());
        prop_assert!(naive_is_invariant(t1.symbols(), t2.symbols(), g.i_pos(), g.j_pos()));
        let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g).unwrap();
        let (x, y) = (naive_bwt(t1.symbols()), naive_bwt(t2.symbols()));
        prop_assert!(al.is_common_subsequence(&x, &y));
        prop_assert!(g.len() <= memo_lcs_len(&x, &y));
    }

    #[test]
    fn relative_locate_matches_scan((s1, s2) in pair_strategy(250), rate in 1usize..12, pats in prop::collection::vec(dna_strategy(5), 1..8)) {
        let (t1, t2) = (dna(&s1), dna(&s2));
        let g = invariant_subsequence(&t1, &t2).unwrap();
        let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g).unwrap();
        let ix1 = Arc::new(FmIndex::build(&t1, rate));
        let ix2 = FmIndex::build(&t2, rate);
        let ri = RelativeIndex::build(ix1.clone(), &ix2.bwt().to_vec(), &al).unwrap();
        let rs = RelativeSample::new(&g, ix1.rows(), ri.rows());
        for p in &pats {
            prop_assert_eq!(rel_locate(&ri, &rs, ri.find(p)).unwrap(), naive_positions(&s2, p));
        }
        let all = rel_locate(&ri, &rs, ri.full_range()).unwrap();
        prop_assert_eq!(all, (1..=s2.len() + 1).collect::<Vec<_>>());
    }
}

#[test]
fn walk_cap_escapes_keep_answers() {
    let mut r = Lcg(11);
    let s1 = r.dna(3000);
    let mut s2 = s1.clone();
    for _ in 0..60 {
        let p = r.below(s2.len());
        s2[p] = b"ACGT"[r.below(4)];
    }
    let (t1, t2) = (dna(&s1), dna(&s2));
    let g = invariant_subsequence(&t1, &t2).unwrap();
    let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g).unwrap();
    let ix1 = Arc::new(FmIndex::build(&t1, 64));
    let ix2 = FmIndex::build(&t2, 64);
    let ri = RelativeIndex::build(ix1, &ix2.bwt().to_vec(), &al).unwrap();
    let rs = RelativeSample::with_walk_cap(&g, &ri, 8).unwrap();
    assert!(!rs.escapes().is_empty());
    let all = rel_locate(&ri, &rs, ri.full_range()).unwrap();
    assert_eq!(all, (1..=s2.len() + 1).collect::<Vec<_>>());
}

#[test]
fn identity_locate_matches_reference() {
    let mut r = Lcg(3);
    let s = r.dna(2000);
    let t = dna(&s);
    let g = InvariantAlignment::new((1..=s.len() + 1).collect(), (1..=s.len() + 1).collect()).unwrap();
    let ix = Arc::new(FmIndex::build(&t, 16));
    let al = InvarianceChecker::new(&t, &t).bwt_alignment(&g).unwrap();
    let ri = RelativeIndex::build(ix.clone(), &ix.bwt().to_vec(), &al).unwrap();
    let rs = RelativeSample::new(&g, ix.rows(), ri.rows());
    for p in [&b"ACG"[..], b"T", b"GGA", b"ACGTAC"] {
        assert_eq!(rel_locate(&ri, &rs, ri.find(p)).unwrap(), ix.locate(ix.find(p)));
    }
}

/// Consecutive selected candidates must cover every combination of first
/// and second choices, each instance staying BWT-invariant.
#[test]
fn all_four_choice_transitions_occur() {
    let mut seen = [[false; 2]; 2];
    let mut r = Lcg(5);
    for _ in 0..400 {
        let len = 40 + r.below(40);
        let s1 = r.dna(len);
        let mut s2 = s1.clone();
        let edits = 1 + r.below(6);
        for _ in 0..edits {
            let p = r.below(s2.len());
            match r.below(3) {
                0 => s2[p] = b"ACGT"[r.below(4)],
                1 => {
                    s2.remove(p);
                }
                _ => s2.insert(p, b"ACGT"[r.below(4)]),
            }
        }
        let (t1, t2) = (dna(&s1), dna(&s2));
        let sel = two_choice_lis(&build_candidates(&t1, &t2).unwrap());
        let mut local = [[false; 2]; 2];
        for w in sel.windows(2) {
            local[w[0].b as usize - 1][w[1].b as usize - 1] = true;
        }
        if local.iter().flatten().any(|&x| x) {
            let g = InvariantAlignment::from_choices(&sel);
            assert!(naive_is_invariant(t1.symbols(), t2.symbols(), g.i_pos(), g.j_pos()));
            for h in 0..2 {
                for k in 0..2 {
                    seen[h][k] |= local[h][k];
                }
            }
        }
        if seen.iter().flatten().all(|&x| x) {
            return;
        }
    }
    panic!("transitions seen: {seen:?}");
}

/// An arbitrary BWT LCS need not come from an invariant text subsequence:
/// on some pair the text pairing it induces breaks row order.
#[test]
fn some_exact_text_lcs_is_not_invariant() {
    let mut r = Lcg(21);
    for _ in 0..200 {
        let s1 = r.dna(30);
        let mut s2 = s1.clone();
        for _ in 0..3 {
            let p = r.below(s2.len());
            s2[p] = b"ACGT"[r.below(4)];
        }
        let (t1, t2) = (dna(&s1), dna(&s2));
        let al = exact_lcs(t1.symbols(), t2.symbols()).unwrap();
        let g = InvariantAlignment::new(al.x_pos().to_vec(), al.y_pos().to_vec()).unwrap();
        if !check_bwt_invariant(&t1, &t2, &g).unwrap() {
            assert!(!naive_is_invariant(t1.symbols(), t2.symbols(), g.i_pos(), g.j_pos()));
            return;
        }
    }
    panic!("every LCS alignment was invariant");
}

#[test]
fn reduction_instance_from_the_construction() {
    let p1 = [6, 3, 2, 1, 4, 5];
    let p2 = [4, 2, 1, 3];
    let (s1, s2) = reduction_texts(&p1, &p2).unwrap();
    assert_eq!(s2.to_bytes(), b"ACCCCACCACACCC");
    assert!(pattern_occurs(&p1, &p2));
    let g = invariant_subsequence(&s1, &s2).unwrap();
    assert!(check_bwt_invariant(&s1, &s2, &g).unwrap());
    // The A pairs of whatever the heuristic returns are an occurrence of
    // the matching part of p2 inside p1.
    let a = s1.get(1);
    let block = |t: &Text, c: usize| (1..=c).filter(|&k| t.get(k) == a).count() - 1;
    let (mut from1, mut from2) = (Vec::new(), Vec::new());
    for (&i, &j) in g.i_pos().iter().zip(g.j_pos()) {
        if s1.get(i) == a {
            from1.push(p1[block(&s1, i)]);
            from2.push(p2[block(&s2, j)]);
        }
    }
    assert!(order_isomorphic(&from1, &from2));
}

#[test]
fn plain_pair_loading_shares_alphabet() {
    let (a, b) = load_text_pair(b"ABAB\n", b"ABBBC", Format::Plain).unwrap();
    assert_eq!(a.alphabet(), b.alphabet());
    assert_eq!(a.alphabet().sigma(), 4);
}
