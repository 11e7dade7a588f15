// Counting in a target text through a relative index that borrows the
// reference's BWT.

use std::error::Error;
use std::sync::Arc;

use rand::Rng;
use relfm::lcsalign::partitioned_bwt_lcs;
use relfm::synth::{mutate, random_dna, rng, sample_pattern};
use relfm::textcore::{load_text_pair, Format};
use relfm::{FmIndex, PartitionSpec, RelativeIndex};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let reference = random_dna(50_000, 11);
    let target = mutate(&reference, 0.005, 0.001, 12);
    let (t1, t2) = load_text_pair(&reference, &target, Format::Fasta)?;

    let ix1 = Arc::new(FmIndex::build(&t1, 32));
    let ix2 = FmIndex::build(&t2, 32);
    let al = partitioned_bwt_lcs(&ix1, &ix2, &PartitionSpec::default())?;
    let ri = RelativeIndex::build(ix1.clone(), &ix2.bwt().to_vec(), &al)?;

    println!("target n = {}, common rows = {}", ri.len(), ri.common_len());
    println!(
        "relative payload {} bytes vs standalone {} bytes ({:.1}%)",
        ri.payload_bytes(),
        ix2.payload_bytes(),
        100.0 * ri.payload_bytes() as f64 / ix2.payload_bytes() as f64
    );

    let mut r = rng(13);
    for _ in 0..200 {
        let len = r.gen_range(1..=20);
        let p = sample_pattern(&target, len, len, &mut r);
        assert_eq!(ri.rel_count(&p), ix2.count(&p));
    }
    for p in ["ACGTACGT", "GATTACA", "TTTTTTTT"] {
        println!("{p}: reference {} target {}", ix1.count(p.as_bytes()), ri.rel_count(p.as_bytes()));
    }

    // rank over the target BWT without storing it
    let bwt2 = ix2.bwt();
    let i = ri.rows() / 2;
    for a in 0..t2.alphabet().sigma() as u8 {
        assert_eq!(ri.rel_rank(a, i)?, bwt2.rank(a, i));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
