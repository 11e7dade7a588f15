// Locating in the target by reusing the reference's suffix-array samples.
// This needs an alignment whose characters keep their relative order in
// both texts, which `invariant_subsequence` finds.

use std::error::Error;
use std::sync::Arc;

use relfm::bwtinv::{check_bwt_invariant, invariant_subsequence, rel_locate, InvarianceChecker, RelativeSample};
use relfm::synth::{mutate, random_dna};
use relfm::textcore::{load_text_pair, Format};
use relfm::{FmIndex, RelativeIndex};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let reference = random_dna(30_000, 21);
    let target = mutate(&reference, 0.01, 0.002, 22);
    let (t1, t2) = load_text_pair(&reference, &target, Format::Fasta)?;

    let g = invariant_subsequence(&t1, &t2)?;
    assert!(check_bwt_invariant(&t1, &t2, &g)?);
    println!("invariant subsequence covers {} of {} characters", g.len(), t2.len() + 1);

    let ix1 = Arc::new(FmIndex::build(&t1, 16));
    let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g)?;
    let bwt2 = FmIndex::build(&t2, 16).bwt().to_vec();
    let ri = RelativeIndex::build(ix1.clone(), &bwt2, &al)?;
    let rs = RelativeSample::new(&g, ix1.rows(), ri.rows());

    let pattern = &target[1000..1012];
    let hits = rel_locate(&ri, &rs, ri.find(pattern))?;
    println!("{} at {hits:?}", String::from_utf8_lossy(pattern));
    assert!(hits.contains(&1001));
    for &p in &hits {
        assert_eq!(&target[p - 1..p - 1 + pattern.len()], pattern);
    }

    // a walk cap stores explicit positions for rows that would walk too far
    let capped = RelativeSample::with_walk_cap(&g, &ri, 8)?;
    println!("walk cap 8: {} escapes", capped.escapes().len());
    assert_eq!(rel_locate(&ri, &capped, ri.find(b"ACGT"))?, rel_locate(&ri, &rs, ri.find(b"ACGT"))?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
