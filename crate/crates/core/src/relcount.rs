//! Relative FM-index for counting.
//!
//! Given a common subsequence `C` of `BWT(S1)` and `BWT(S2)`, the target BWT
//! is represented by two bit arrays marking the rows outside `C` and two
//! short sequences holding those rows' symbols. A rank query on `BWT(S2)`
//! becomes a rank on the reference BWT, corrected by the two difference
//! sequences:
//!
//! ```text
//! rank_a(BWT2, i) = rank_a(BWT1, k) - rank_a(D1, B1.rank1(k)) + rank_a(D2, B2.rank1(i))
//! k = B1.select0(B2.rank0(i))        (k = 0 when B2.rank0(i) = 0)
//! ```

use std::sync::Arc;

use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fmindex::{FmIndex, SuffixRange};
use crate::lcsalign::Alignment;
use crate::succinct::{BitArray, WaveletSequence};
use crate::textcore::{CumulativeCounts, SENTINEL};

/// Target cumulative counts stored only where symbol frequencies differ
/// from the reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountDelta {
    symbols: Vec<u8>,
    /// `through[k]` is the number of target symbols `<= symbols[k]`.
    through: Vec<usize>,
}

impl CountDelta {
    pub fn new(reference: &CumulativeCounts, target: &CumulativeCounts) -> Self {
        let mut symbols = Vec::new();
        let mut through = Vec::new();
        for a in 0..reference.sigma() {
            if reference.frequency(a) != target.frequency(a) {
                symbols.push(a as u8);
                through.push(target.before(a + 1));
            }
        }
        CountDelta { symbols, through }
    }

    /// Symbols whose frequencies differ, ascending.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Target count of symbols smaller than `b`.
    #[inline]
    pub fn before(&self, reference: &CumulativeCounts, b: usize) -> usize {
        let k = self.symbols.partition_point(|&d| (d as usize) < b);
        if k == 0 {
            return reference.before(b);
        }
        let d = self.symbols[k - 1] as usize;
        reference.before(b) - reference.before(d + 1) + self.through[k - 1]
    }

    fn write(&self, w: &mut Writer) {
        w.usize(self.symbols.len());
        w.bytes(&self.symbols);
        w.usizes(&self.through);
    }

    fn read(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.len_prefix(1)?;
        let symbols = r.take(len)?.to_vec();
        let through = r.usizes()?;
        Ok(CountDelta { symbols, through })
    }

    fn payload_bytes(&self) -> usize {
        16 + self.symbols.len() + 8 * self.through.len()
    }
}

/// Counting index for a target text expressed against a reference index.
#[derive(Clone, Debug)]
pub struct RelativeIndex {
    reference: Arc<FmIndex>,
    b1: BitArray,
    b2: BitArray,
    d1: WaveletSequence,
    d2: WaveletSequence,
    delta: CountDelta,
    n2: usize,
}

impl RelativeIndex {
    /// Builds from the reference index, the target BWT and a common
    /// subsequence of the two BWTs given as row numbers. The alignment is
    /// checked against both BWTs.
    pub fn build(reference: Arc<FmIndex>, bwt2: &[u8], align: &Alignment) -> Result<Self> {
        let sigma = reference.alphabet().sigma();
        if let Some(&bad) = bwt2.iter().find(|&&c| c as usize >= sigma) {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: bad as usize,
                sigma,
            });
        }
        if bwt2.iter().filter(|&&c| c == SENTINEL).count() != 1 {
            return Err(Error::InvalidAlignment(
                "target BWT must hold exactly one sentinel".into(),
            ));
        }
        let bwt1 = reference.bwt().to_vec();
        align.validate(&bwt1, bwt2)?;

        let b1 = BitArray::with_zeros_at(bwt1.len(), align.x_pos());
        let b2 = BitArray::with_zeros_at(bwt2.len(), align.y_pos());
        let d1 = pick_ones(&b1, &bwt1);
        let d2 = pick_ones(&b2, bwt2);
        let target = CumulativeCounts::from_symbols(bwt2, sigma);
        let delta = CountDelta::new(reference.counts(), &target);
        Ok(RelativeIndex {
            b1,
            b2,
            d1: WaveletSequence::new(&d1, sigma),
            d2: WaveletSequence::new(&d2, sigma),
            delta,
            n2: bwt2.len() - 1,
            reference,
        })
    }

    pub fn reference(&self) -> &Arc<FmIndex> {
        &self.reference
    }

    pub fn b1(&self) -> &BitArray {
        &self.b1
    }

    pub fn b2(&self) -> &BitArray {
        &self.b2
    }

    pub fn d1(&self) -> &WaveletSequence {
        &self.d1
    }

    pub fn d2(&self) -> &WaveletSequence {
        &self.d2
    }

    pub fn count_delta(&self) -> &CountDelta {
        &self.delta
    }

    /// Target length `n2` (without the sentinel).
    pub fn len(&self) -> usize {
        self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.n2 == 0
    }

    pub fn rows(&self) -> usize {
        self.n2 + 1
    }

    /// Length of the common subsequence the index was built from.
    pub fn common_len(&self) -> usize {
        self.b2.count_zeros()
    }

    pub fn full_range(&self) -> SuffixRange {
        SuffixRange::new(1, self.rows())
    }

    /// Reference row holding the common-subsequence symbol that sits at
    /// target row `i`, or `None` when row `i` is outside it.
    #[inline]
    pub fn mirrored_row(&self, i: usize) -> Option<usize> {
        (!self.b2.get(i)).then(|| self.b1.select0(self.b2.rank0(i)))
    }

    #[inline]
    fn rank_unchecked(&self, a: u8, i: usize) -> usize {
        let z = self.b2.rank0(i);
        let shared = if z == 0 {
            0
        } else {
            let k = self.b1.select0(z);
            self.reference.bwt().rank(a, k) - self.d1.rank(a, self.b1.rank1(k))
        };
        shared + self.d2.rank(a, self.b2.rank1(i))
    }

    /// Occurrences of `a` among the first `i` symbols of `BWT(S2)`.
    pub fn rel_rank(&self, a: u8, i: usize) -> Result<usize> {
        self.check_symbol(a)?;
        if i > self.rows() {
            return Err(Error::OutOfRange {
                what: "row",
                index: i,
                limit: self.rows(),
            });
        }
        Ok(self.rank_unchecked(a, i))
    }

    #[inline]
    fn access_unchecked(&self, i: usize) -> u8 {
        match self.mirrored_row(i) {
            Some(k) => self.reference.bwt().access(k),
            None => self.d2.access(self.b2.rank1(i)),
        }
    }

    /// Symbol at row `i` of `BWT(S2)`.
    pub fn rel_access(&self, i: usize) -> Result<u8> {
        self.check_row(i)?;
        Ok(self.access_unchecked(i))
    }

    /// Number of target symbols (sentinel included) smaller than `a`.
    /// `a == sigma` gives the total length.
    pub fn rel_cumulative(&self, a: u8) -> Result<usize> {
        if a as usize > self.reference.alphabet().sigma() {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: a as usize,
                sigma: self.reference.alphabet().sigma(),
            });
        }
        Ok(self.delta.before(self.reference.counts(), a as usize))
    }

    #[inline]
    pub(crate) fn lf_unchecked(&self, i: usize) -> (u8, usize) {
        let a = self.access_unchecked(i);
        let before = self.delta.before(self.reference.counts(), a as usize);
        (a, before + self.rank_unchecked(a, i))
    }

    /// LF-mapping on `BWT(S2)`.
    pub fn rel_lf(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        Ok(self.lf_unchecked(i).1)
    }

    pub fn backward_extend(&self, rg: SuffixRange, a: u8) -> SuffixRange {
        if rg.is_empty() || a as usize >= self.reference.alphabet().sigma() {
            return SuffixRange::EMPTY;
        }
        let base = self.delta.before(self.reference.counts(), a as usize);
        SuffixRange::new(
            base + self.rank_unchecked(a, rg.lo - 1) + 1,
            base + self.rank_unchecked(a, rg.hi),
        )
    }

    /// Target rows prefixed by the encoded `pattern`.
    pub fn rel_range(&self, pattern: &[u8]) -> SuffixRange {
        let mut rg = self.full_range();
        for &a in pattern.iter().rev() {
            rg = self.backward_extend(rg, a);
            if rg.is_empty() {
                break;
            }
        }
        rg
    }

    /// Range for a raw byte pattern.
    pub fn find(&self, pattern: &[u8]) -> SuffixRange {
        match self.reference.alphabet().encode_pattern(pattern) {
            Some(p) if !p.is_empty() => self.rel_range(&p),
            _ => SuffixRange::EMPTY,
        }
    }

    /// Occurrences of `pattern` in the target.
    pub fn rel_count(&self, pattern: &[u8]) -> usize {
        self.find(pattern).len()
    }

    /// Decodes `BWT(S2)` through the relative structures.
    pub fn bwt_symbols(&self) -> Vec<u8> {
        (1..=self.rows()).map(|i| self.access_unchecked(i)).collect()
    }

    fn check_symbol(&self, a: u8) -> Result<()> {
        let sigma = self.reference.alphabet().sigma();
        if a as usize >= sigma {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: a as usize,
                sigma,
            });
        }
        Ok(())
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rows() {
            return Err(Error::OutOfRange {
                what: "row",
                index: i,
                limit: self.rows(),
            });
        }
        Ok(())
    }

    pub(crate) fn write_payload(&self, w: &mut Writer) {
        w.usize(self.n2);
        self.b1.write(w);
        self.b2.write(w);
        self.d1.write(w);
        self.d2.write(w);
        self.delta.write(w);
    }

    pub(crate) fn read_payload(r: &mut Reader<'_>, reference: Arc<FmIndex>) -> Result<Self> {
        let n2 = r.usize()?;
        let b1 = BitArray::read(r)?;
        let b2 = BitArray::read(r)?;
        let d1 = WaveletSequence::read(r)?;
        let d2 = WaveletSequence::read(r)?;
        let delta = CountDelta::read(r)?;
        let sigma = reference.alphabet().sigma();
        let shape_ok = n2.checked_add(1) == Some(b2.len())
            && b1.len() == reference.rows()
            && b1.count_zeros() == b2.count_zeros()
            && d1.len() == b1.count_ones()
            && d2.len() == b2.count_ones()
            && d1.sigma() == sigma
            && d2.sigma() == sigma;
        if !shape_ok {
            return Err(Error::Corrupt("relative index shape mismatch".into()));
        }
        let ri = RelativeIndex {
            reference,
            b1,
            b2,
            d1,
            d2,
            delta,
            n2,
        };
        let freq: Option<Vec<usize>> = (0..sigma as u8)
            .map(|a| {
                ri.reference
                    .counts()
                    .frequency(a as usize)
                    .checked_sub(ri.d1.rank(a, ri.d1.len()))
                    .map(|f| f + ri.d2.rank(a, ri.d2.len()))
            })
            .collect();
        let freq = freq.ok_or_else(|| Error::Corrupt("difference sequence exceeds reference".into()))?;
        let expected = CountDelta::new(ri.reference.counts(), &CumulativeCounts::from_frequencies(&freq));
        if expected != ri.delta || freq[SENTINEL as usize] != 1 {
            return Err(Error::Corrupt("count delta disagrees with difference sequences".into()));
        }
        Ok(ri)
    }

    /// Serialized size in bytes, excluding the reference.
    pub fn payload_bytes(&self) -> usize {
        8 + self.b1.payload_bytes()
            + self.b2.payload_bytes()
            + self.d1.payload_bytes()
            + self.d2.payload_bytes()
            + self.delta.payload_bytes()
    }

    /// Serialized size of the parts that grow with the BWT difference:
    /// `D1`, `D2` and the count delta.
    pub fn difference_bytes(&self) -> usize {
        self.d1.payload_bytes() + self.d2.payload_bytes() + self.delta.payload_bytes()
    }
}

fn pick_ones(bits: &BitArray, symbols: &[u8]) -> Vec<u8> {
    bits.iter()
        .zip(symbols)
        .filter(|&(b, _)| b)
        .map(|(_, &c)| c)
        .collect()
}
