//! Prefix-partitioned LCS of two BWTs.
//!
//! Rows of both BWTs whose suffixes share a prefix `x` form one interval in
//! each BWT, and intervals for distinct prefixes of equal length are ordered
//! the same way on both sides. Aligning each interval pair on its own and
//! concatenating the results therefore yields a common subsequence of the
//! whole BWTs.

use rayon::prelude::*;

use super::{common_run, greedy_lcs, Alignment, PartitionSpec};
use crate::error::{Error, Result};
use crate::fmindex::{FmIndex, SuffixRange};
use crate::textcore::SENTINEL;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafStrategy {
    Greedy,
    CommonRun,
}

/// One final interval pair of the partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    /// Shared suffix prefix (encoded).
    pub pattern: Vec<u8>,
    pub left: SuffixRange,
    pub right: SuffixRange,
    pub strategy: LeafStrategy,
}

/// Leaves in row order. Children are visited in symbol order, so the
/// sentinel leaf comes first and every later leaf starts after the previous
/// one on both sides.
pub fn partition_leaves(ix1: &FmIndex, ix2: &FmIndex, spec: &PartitionSpec) -> Result<Vec<Leaf>> {
    spec.validate()?;
    if ix1.alphabet() != ix2.alphabet() {
        return Err(Error::AlphabetMismatch(
            "partitioned LCS needs both indexes over one alphabet".into(),
        ));
    }
    let sigma = ix1.alphabet().sigma() as u8;
    let catch_all_run = ix1
        .alphabet()
        .catch_all()
        .map(|c| vec![c; spec.max_depth]);

    let mut leaves = Vec::new();
    let mut stack = vec![(Vec::new(), ix1.full_range(), ix2.full_range())];
    while let Some((pattern, left, right)) = stack.pop() {
        let at_leaf = !pattern.is_empty()
            && (left.len() <= spec.max_block
                || right.len() <= spec.max_block
                || pattern.len() >= spec.max_depth
                || pattern.last() == Some(&SENTINEL));
        if at_leaf {
            let gap = left.len().abs_diff(right.len());
            let strategy = if gap > spec.hard_gap || catch_all_run.as_ref() == Some(&pattern) {
                LeafStrategy::CommonRun
            } else {
                LeafStrategy::Greedy
            };
            leaves.push(Leaf {
                pattern,
                left,
                right,
                strategy,
            });
            continue;
        }
        for a in (0..sigma).rev() {
            let mut child = pattern.clone();
            child.push(a);
            let l = if left.is_empty() { SuffixRange::EMPTY } else { ix1.range_of(&child) };
            let r = if right.is_empty() { SuffixRange::EMPTY } else { ix2.range_of(&child) };
            if !(l.is_empty() && r.is_empty()) {
                stack.push((child, l, r));
            }
        }
    }
    Ok(leaves)
}

/// Approximate LCS of `BWT(S1)` and `BWT(S2)` as positions into the two
/// BWTs (row numbers).
pub fn partitioned_bwt_lcs(ix1: &FmIndex, ix2: &FmIndex, spec: &PartitionSpec) -> Result<Alignment> {
    let leaves = partition_leaves(ix1, ix2, spec)?;
    let bwt1 = ix1.bwt().to_vec();
    let bwt2 = ix2.bwt().to_vec();
    let span = |rg: SuffixRange| if rg.is_empty() { 0..0 } else { rg.lo - 1..rg.hi };
    let parts: Vec<Alignment> = leaves
        .par_iter()
        .map(|leaf| {
            let x = &bwt1[span(leaf.left)];
            let y = &bwt2[span(leaf.right)];
            if x == y {
                return Alignment::identity(x.len());
            }
            match leaf.strategy {
                LeafStrategy::CommonRun => common_run(x, y),
                LeafStrategy::Greedy => greedy_lcs(x, y, spec.max_diag),
            }
        })
        .collect();
    let mut out = Alignment::default();
    for (leaf, part) in leaves.iter().zip(&parts) {
        let x_off = if leaf.left.is_empty() { 0 } else { leaf.left.lo - 1 };
        let y_off = if leaf.right.is_empty() { 0 } else { leaf.right.lo - 1 };
        out.append_shifted(part, x_off, y_off);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcsalign::exact_lcs;
    use crate::textcore::{load_text, Format};

    fn index(s: &[u8]) -> FmIndex {
        FmIndex::build(&load_text(s, Format::Fasta).unwrap(), 4)
    }

    fn tiny() -> PartitionSpec {
        PartitionSpec {
            max_block: 2,
            max_depth: 3,
            max_diag: 8,
            hard_gap: 4,
        }
    }

    #[test]
    fn leaves_tile_the_rows() {
        let a = index(b"ACGTTGCAACGTAGGCTAGCAAAT");
        let b = index(b"ACGTTGCTACGTAGCTAGCAAATT");
        let leaves = partition_leaves(&a, &b, &tiny()).unwrap();
        assert_eq!(leaves[0].pattern, vec![SENTINEL]);
        assert_eq!((leaves[0].left, leaves[0].right), (SuffixRange::new(1, 1), SuffixRange::new(1, 1)));
        for (ix, side) in [(&a, 0), (&b, 1)] {
            let mut next = 1;
            for leaf in &leaves {
                let rg = if side == 0 { leaf.left } else { leaf.right };
                if !rg.is_empty() {
                    assert_eq!(rg.lo, next);
                    next = rg.hi + 1;
                }
            }
            assert_eq!(next, ix.rows() + 1);
        }
    }

    #[test]
    fn identical_inputs_align_fully() {
        let a = index(b"ACGTTGCAACGTAGGCTAGCAAATNNNN");
        let al = partitioned_bwt_lcs(&a, &a, &tiny()).unwrap();
        assert_eq!(al, Alignment::identity(a.rows()));
    }

    #[test]
    fn result_is_common_subsequence_and_not_longer_than_exact() {
        let a = index(b"AACGTGTGCAACTGATTTACGAGCGCATAC");
        let b = index(b"AACGAGTGCACTGATTTTACGAGCGCTAC");
        let x = a.bwt().to_vec();
        let y = b.bwt().to_vec();
        for spec in [tiny(), PartitionSpec::default()] {
            let al = partitioned_bwt_lcs(&a, &b, &spec).unwrap();
            al.validate(&x, &y).unwrap();
            assert!(al.len() <= exact_lcs(&x, &y).unwrap().len());
        }
    }

    #[test]
    fn hard_gap_uses_common_run() {
        let a = index(b"ACACACACACACACACACACAAAA");
        let b = index(b"AAAAAAAAAAAAAAAAAAAAAAAC");
        let spec = PartitionSpec {
            max_block: 1,
            max_depth: 2,
            max_diag: 100,
            hard_gap: 3,
        };
        let leaves = partition_leaves(&a, &b, &spec).unwrap();
        assert!(leaves.iter().any(|l| l.strategy == LeafStrategy::CommonRun));
        let al = partitioned_bwt_lcs(&a, &b, &spec).unwrap();
        al.validate(&a.bwt().to_vec(), &b.bwt().to_vec()).unwrap();
    }

    #[test]
    fn catch_all_run_uses_common_run() {
        let a = index(b"ACGNNNNNNNNT");
        let b = index(b"ACGNNNNNNNNNT");
        let spec = PartitionSpec {
            max_block: 1,
            max_depth: 3,
            max_diag: 100,
            hard_gap: 100,
        };
        let leaves = partition_leaves(&a, &b, &spec).unwrap();
        let n = a.alphabet().catch_all().unwrap();
        let leaf = leaves.iter().find(|l| l.pattern == vec![n; 3]).unwrap();
        assert_eq!(leaf.strategy, LeafStrategy::CommonRun);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = index(b"ACGT");
        let b = FmIndex::build(&load_text(b"ACGT", Format::Plain).unwrap(), 4);
        assert!(partitioned_bwt_lcs(&a, &b, &tiny()).is_err());
    }
}
