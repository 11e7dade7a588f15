//! BWT-invariant common subsequences and SA-sample reuse.
//!
//! A common subsequence `G` of two texts is BWT-invariant when its
//! characters appear in the same relative order in both BWTs. Such a `G`
//! yields a common subsequence of the BWTs whose rows map back to text
//! positions consistently, which lets a relative index borrow the
//! reference's suffix-array sample for locating.

mod candidates;
mod lis;
mod locate;
mod reduction;

pub use candidates::{build_candidates, TwoChoiceArray};
pub use lis::{two_choice_lis, Choice};
pub use locate::{rel_locate, rel_locate_row, sample_formula, RelativeSample};
pub use reduction::{reduction_strings, reduction_texts};

use crate::error::{Error, Result};
use crate::lcsalign::Alignment;
use crate::succinct::BitArray;
use crate::textcore::{build_suffix_array, Text};

/// Paired character positions (1-based, sentinel position allowed) of a
/// common subsequence of two texts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantAlignment {
    i_pos: Vec<usize>,
    j_pos: Vec<usize>,
}

impl InvariantAlignment {
    /// Checks shape only; see [`check_bwt_invariant`] for content.
    pub fn new(i_pos: Vec<usize>, j_pos: Vec<usize>) -> Result<Self> {
        let a = Alignment::new(i_pos, j_pos)?;
        Ok(InvariantAlignment {
            i_pos: a.x_pos().to_vec(),
            j_pos: a.y_pos().to_vec(),
        })
    }

    pub fn from_choices(choices: &[Choice]) -> Self {
        InvariantAlignment {
            i_pos: choices.iter().map(|c| c.i).collect(),
            j_pos: choices.iter().map(|c| c.value).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.i_pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i_pos.is_empty()
    }

    pub fn i_pos(&self) -> &[usize] {
        &self.i_pos
    }

    pub fn j_pos(&self) -> &[usize] {
        &self.j_pos
    }

    /// Ones at the `rows1` positions of `S1` that are not in `G`.
    pub fn m1(&self, rows1: usize) -> BitArray {
        BitArray::with_zeros_at(rows1, &self.i_pos)
    }

    pub fn m2(&self, rows2: usize) -> BitArray {
        BitArray::with_zeros_at(rows2, &self.j_pos)
    }

    pub fn as_alignment(&self) -> Alignment {
        Alignment::new(self.i_pos.clone(), self.j_pos.clone()).expect("shape checked on construction")
    }
}

/// Maps text characters to their BWT rows for a fixed pair of texts.
pub struct InvarianceChecker<'a> {
    s1: &'a Text,
    s2: &'a Text,
    isa1: Vec<usize>,
    isa2: Vec<usize>,
}

/// BWT row holding character `c` of a text with `isa` as inverse suffix
/// array: the row of the suffix starting right after it.
fn row_of(isa: &[usize], c: usize) -> usize {
    if c == isa.len() {
        isa[0]
    } else {
        isa[c]
    }
}

impl<'a> InvarianceChecker<'a> {
    pub fn new(s1: &'a Text, s2: &'a Text) -> Self {
        InvarianceChecker {
            s1,
            s2,
            isa1: build_suffix_array(s1).inverse(),
            isa2: build_suffix_array(s2).inverse(),
        }
    }

    fn rows(&self, g: &InvariantAlignment) -> Result<(Vec<usize>, Vec<usize>)> {
        g.as_alignment().validate(self.s1.symbols(), self.s2.symbols())?;
        let v = g.i_pos.iter().map(|&c| row_of(&self.isa1, c)).collect();
        let w = g.j_pos.iter().map(|&c| row_of(&self.isa2, c)).collect();
        Ok((v, w))
    }

    /// `true` when sorting `G` by BWT row gives the same order in both
    /// texts. Errors if `g` is not a common subsequence.
    pub fn check(&self, g: &InvariantAlignment) -> Result<bool> {
        let (v, w) = self.rows(g)?;
        Ok(same_relative_order(&v, &w))
    }

    /// The common subsequence of the two BWTs induced by an invariant `g`.
    pub fn bwt_alignment(&self, g: &InvariantAlignment) -> Result<Alignment> {
        let (v, w) = self.rows(g)?;
        let mut pairs: Vec<(usize, usize)> = v.into_iter().zip(w).collect();
        pairs.sort_unstable();
        let (x, y): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        Alignment::new(x, y).map_err(|_| Error::InvalidAlignment("subsequence is not BWT-invariant".into()))
    }
}

pub fn check_bwt_invariant(s1: &Text, s2: &Text, g: &InvariantAlignment) -> Result<bool> {
    InvarianceChecker::new(s1, s2).check(g)
}

/// Whether the two sequences (distinct values each) sort into the same
/// permutation.
pub fn same_relative_order(v: &[usize], w: &[usize]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by_key(|&k| v[k]);
    order.windows(2).all(|p| w[p[0]] < w[p[1]])
}

/// Candidate arrays plus two-choice LIS. The result is always
/// BWT-invariant; debug builds re-check it.
pub fn invariant_subsequence(s1: &Text, s2: &Text) -> Result<InvariantAlignment> {
    let a = build_candidates(s1, s2)?;
    let g = InvariantAlignment::from_choices(&two_choice_lis(&a));
    debug_assert!(check_bwt_invariant(s1, s2, &g).unwrap_or(false));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textcore::{load_text, Format};

    fn fasta(s: &[u8]) -> Text {
        load_text(s, Format::Fasta).unwrap()
    }

    #[test]
    fn identity_on_equal_texts() {
        let t = fasta(b"AAGTTGAGAGTGAGT");
        let g = InvariantAlignment::new((1..=16).collect(), (1..=16).collect()).unwrap();
        assert!(check_bwt_invariant(&t, &t, &g).unwrap());
        let found = invariant_subsequence(&t, &t).unwrap();
        assert!(found.len() >= t.len() - 1);
        assert!(check_bwt_invariant(&t, &t, &found).unwrap());
    }

    #[test]
    fn short_dna_pair_is_invariant() {
        let s1 = fasta(b"AAGTTGAGAGTGAGT");
        let s2 = fasta(b"AGAGAGTCGAAGTT");
        let g = invariant_subsequence(&s1, &s2).unwrap();
        assert_eq!(g.i_pos(), &[6, 7, 12, 13, 14, 15, 16]);
        assert_eq!(g.j_pos(), &[2, 3, 4, 5, 6, 14, 15]);
        let checker = InvarianceChecker::new(&s1, &s2);
        assert!(checker.check(&g).unwrap());
        let bwt = checker.bwt_alignment(&g).unwrap();
        let x = crate::FmIndex::build(&s1, 4).bwt().to_vec();
        let y = crate::FmIndex::build(&s2, 4).bwt().to_vec();
        bwt.validate(&x, &y).unwrap();
        assert!(g.len() <= crate::lcsalign::exact_lcs(&x, &y).unwrap().len());
    }

    #[test]
    fn crossing_pairs_are_not_invariant() {
        // AC... vs CA...: pairing both characters keeps text order but
        // swaps their BWT rows.
        let s1 = fasta(b"ACAC");
        let s2 = fasta(b"ACCA");
        let checker = InvarianceChecker::new(&s1, &s2);
        let mut any_false = false;
        for (i, j) in [(vec![1, 2], vec![1, 2]), (vec![1, 2], vec![1, 3]), (vec![2, 3], vec![3, 4])] {
            let g = InvariantAlignment::new(i, j).unwrap();
            if !checker.check(&g).unwrap() {
                any_false = true;
            }
        }
        assert!(any_false);
    }

    #[test]
    fn non_subsequence_is_an_error() {
        let s1 = fasta(b"ACGT");
        let s2 = fasta(b"TGCA");
        let g = InvariantAlignment::new(vec![1], vec![1]).unwrap();
        assert!(matches!(check_bwt_invariant(&s1, &s2, &g), Err(Error::NotCommonSubsequence(_))));
    }

    #[test]
    fn relative_order_helper() {
        let order = [11, 2, 4, 8, 1, 7, 3, 5, 9, 10, 6];
        assert!(same_relative_order(&order, &order));
        let s1 = [16, 2, 6, 13, 1, 12, 3, 7, 14, 15, 11];
        let s2 = [15, 2, 5, 12, 1, 11, 3, 6, 13, 14, 10];
        assert!(same_relative_order(&s1, &s2));
        assert!(!same_relative_order(&[15, 12, 1, 3, 14], &[16, 13, 1, 7, 10]));
        assert!(!same_relative_order(&[1, 2], &[1]));
    }
}
