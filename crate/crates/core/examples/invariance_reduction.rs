// BWT invariance on a hand-sized pair, and the permutation-pattern
// instances where deciding it gets hard.

use std::error::Error;

use relfm::bwtinv::{
    check_bwt_invariant, invariant_subsequence, reduction_strings, reduction_texts, same_relative_order,
    InvarianceChecker, InvariantAlignment,
};
use relfm::textcore::{load_text_pair, Format};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (s1, s2) = load_text_pair(b"AAGTTGAGAGTGAGT", b"AGAGAGTCGAAGTT", Format::Fasta)?;
    let g = invariant_subsequence(&s1, &s2)?;
    println!("S1 positions {:?}", g.i_pos());
    println!("S2 positions {:?}", g.j_pos());
    assert!(check_bwt_invariant(&s1, &s2, &g)?);

    // pairing the two sentinels alone is always invariant
    let trivial = InvariantAlignment::new(vec![16], vec![15])?;
    assert!(check_bwt_invariant(&s1, &s2, &trivial)?);

    assert!(same_relative_order(&[3, 1, 2], &[30, 10, 20]));
    assert!(!same_relative_order(&[3, 1, 2], &[10, 30, 20]));

    // does (2,1) occur in (3,1,4,2)? then some subset of S1's A's pairs with
    // all of S2's A's invariantly
    let p1 = [3, 1, 4, 2];
    let p2 = [2, 1];
    let (a, b) = reduction_strings(&p1, &p2)?;
    println!("{} / {}", String::from_utf8_lossy(&a), String::from_utf8_lossy(&b));
    let (t1, t2) = reduction_texts(&p1, &p2)?;
    let checker = InvarianceChecker::new(&t1, &t2);
    let a_code = t1.get(1);
    let a1: Vec<usize> = (1..=t1.len()).filter(|&c| t1.get(c) == a_code).collect();
    let a2: Vec<usize> = (1..=t2.len()).filter(|&c| t2.get(c) == a_code).collect();
    let mut found = Vec::new();
    for i in 0..a1.len() {
        for j in i + 1..a1.len() {
            let g = InvariantAlignment::new(vec![a1[i], a1[j]], a2.clone())?;
            if checker.check(&g)? {
                found.push((i + 1, j + 1));
            }
        }
    }
    println!("invariant choices of A's: {found:?}");
    assert!(!found.is_empty());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
