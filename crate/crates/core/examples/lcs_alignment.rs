// Aligning two BWTs: exact LCS on small inputs, and the partitioned
// approximation that scales to large similar texts.

use std::error::Error;

use relfm::lcsalign::{bw_distance, exact_lcs, greedy_lcs, partition_leaves, partitioned_bwt_lcs, LeafStrategy};
use relfm::synth::{mutate, random_dna};
use relfm::textcore::{load_text, Format};
use relfm::{FmIndex, PartitionSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = b"ABCABBA";
    let y = b"CBABAC";
    let exact = exact_lcs(x, y)?;
    let greedy = greedy_lcs(x, y, 100);
    println!("exact {} greedy {}", exact.len(), greedy.len());
    assert_eq!(exact.len(), 4);
    assert_eq!(greedy.len(), 4);
    for (i, j) in exact.pairs() {
        println!("  x[{i}] = y[{j}] = {}", x[i - 1] as char);
    }

    let s1 = random_dna(20_000, 3);
    let s2 = mutate(&s1, 0.01, 0.001, 3);
    let ix1 = FmIndex::build(&load_text(&s1, Format::Fasta)?, 32);
    let ix2 = FmIndex::build(&load_text(&s2, Format::Fasta)?, 32);

    let spec = PartitionSpec::default();
    let leaves = partition_leaves(&ix1, &ix2, &spec)?;
    let runs = leaves.iter().filter(|l| l.strategy == LeafStrategy::CommonRun).count();
    println!("{} leaves, {runs} aligned as common runs", leaves.len());

    let al = partitioned_bwt_lcs(&ix1, &ix2, &spec)?;
    al.validate(&ix1.bwt().to_vec(), &ix2.bwt().to_vec())?;
    let bwd = bw_distance(ix1.len(), ix2.len(), &al)?;
    println!(
        "aligned {} of {} rows, BWT distance {bwd}",
        al.len(),
        ix1.rows().max(ix2.rows())
    );

    // smaller blocks mean more, shorter leaves
    let coarse = PartitionSpec { max_block: 64, ..spec };
    let al2 = partitioned_bwt_lcs(&ix1, &ix2, &coarse)?;
    println!("max_block 64: {} aligned", al2.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
