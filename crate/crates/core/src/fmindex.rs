//! Standalone FM-index: backward search, LF-mapping, SA-sample locating and
//! extraction.

use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};
use crate::succinct::{BitArray, WaveletSequence};
use crate::textcore::{self, Alphabet, CumulativeCounts, SuffixArray, Text, SENTINEL};

pub const DEFAULT_SAMPLE_RATE: usize = 32;

/// Inclusive interval of BWT rows. Empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuffixRange {
    pub lo: usize,
    pub hi: usize,
}

impl SuffixRange {
    pub const EMPTY: SuffixRange = SuffixRange { lo: 1, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        SuffixRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Suffix-array sample taken at every `rate`-th text position (phase 1)
/// plus the sentinel suffix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaSample {
    rate: usize,
    /// 1 at sampled rows.
    marks: BitArray,
    /// Suffix start of each sampled row, in row order.
    to_text: Vec<usize>,
    /// `inverse[k]` is the row of the suffix starting at `1 + k * rate`.
    inverse: Vec<usize>,
}

impl SaSample {
    pub fn build(sa: &SuffixArray, rate: usize) -> Self {
        assert!(rate >= 1, "sample rate must be positive");
        let total = sa.len();
        let sampled = |pos: usize| (pos - 1).is_multiple_of(rate) || pos == total;
        let marks = BitArray::from_bools(sa.order().iter().map(|&p| sampled(p)));
        let to_text = sa.order().iter().copied().filter(|&p| sampled(p)).collect();
        let rows = sa.inverse();
        let inverse = (1..=total).step_by(rate).map(|p| rows[p - 1]).collect();
        SaSample {
            rate,
            marks,
            to_text,
            inverse,
        }
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn marks(&self) -> &BitArray {
        &self.marks
    }

    /// Suffix start stored for the `k`-th sampled row (1-based `k`).
    pub fn text_position(&self, k: usize) -> usize {
        self.to_text[k - 1]
    }

    pub fn sampled_positions(&self) -> &[usize] {
        &self.to_text
    }

    /// Suffix start of `row` if that row is sampled.
    #[inline]
    pub fn lookup(&self, row: usize) -> Option<usize> {
        self.marks
            .get(row)
            .then(|| self.to_text[self.marks.rank1(row) - 1])
    }

    fn write(&self, w: &mut Writer) {
        w.usize(self.rate);
        self.marks.write(w);
        w.usizes(&self.to_text);
        w.usizes(&self.inverse);
    }

    fn read(r: &mut Reader<'_>, total: usize) -> Result<Self> {
        let rate = r.usize()?;
        let marks = BitArray::read(r)?;
        let to_text = r.usizes()?;
        let inverse = r.usizes()?;
        let ok = rate >= 1
            && marks.len() == total
            && marks.count_ones() == to_text.len()
            && inverse.len() == total.div_ceil(rate)
            && to_text.iter().all(|&p| p >= 1 && p <= total)
            && inverse.iter().all(|&p| p >= 1 && p <= total);
        if !ok {
            return Err(Error::Corrupt("inconsistent SA sample".into()));
        }
        Ok(SaSample {
            rate,
            marks,
            to_text,
            inverse,
        })
    }

    fn payload_bytes(&self) -> usize {
        8 + self.marks.payload_bytes() + 16 + 8 * (self.to_text.len() + self.inverse.len())
    }
}

/// FM-index over one sentinel-terminated text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmIndex {
    alphabet: Alphabet,
    bwt: WaveletSequence,
    counts: CumulativeCounts,
    sample: SaSample,
    n: usize,
}

impl FmIndex {
    pub fn build(text: &Text, rate: usize) -> Self {
        let sa = textcore::build_suffix_array(text);
        Self::build_with_sa(text, &sa, rate)
    }

    pub fn build_with_sa(text: &Text, sa: &SuffixArray, rate: usize) -> Self {
        let bwt = textcore::bwt(text, sa);
        let sigma = text.alphabet().sigma();
        FmIndex {
            alphabet: text.alphabet().clone(),
            bwt: WaveletSequence::new(&bwt, sigma),
            counts: textcore::char_counts(text),
            sample: SaSample::build(sa, rate),
            n: text.len(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bwt(&self) -> &WaveletSequence {
        &self.bwt
    }

    pub fn counts(&self) -> &CumulativeCounts {
        &self.counts
    }

    pub fn sample(&self) -> &SaSample {
        &self.sample
    }

    /// Text length without the sentinel.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of rows, `n + 1`.
    pub fn rows(&self) -> usize {
        self.n + 1
    }

    pub fn full_range(&self) -> SuffixRange {
        SuffixRange::new(1, self.rows())
    }

    /// Range of suffixes starting with `a` followed by the suffixes in `rg`.
    pub fn backward_extend(&self, rg: SuffixRange, a: u8) -> SuffixRange {
        if rg.is_empty() || a as usize >= self.alphabet.sigma() {
            return SuffixRange::EMPTY;
        }
        let base = self.counts.before(a as usize);
        SuffixRange::new(
            base + self.bwt.rank(a, rg.lo - 1) + 1,
            base + self.bwt.rank(a, rg.hi),
        )
    }

    /// Range of suffixes prefixed by the encoded `pattern`.
    pub fn range_of(&self, pattern: &[u8]) -> SuffixRange {
        let mut rg = self.full_range();
        for &a in pattern.iter().rev() {
            rg = self.backward_extend(rg, a);
            if rg.is_empty() {
                break;
            }
        }
        rg
    }

    /// Range for a raw byte pattern; empty when a byte is outside the alphabet.
    pub fn find(&self, pattern: &[u8]) -> SuffixRange {
        match self.alphabet.encode_pattern(pattern) {
            Some(p) if !p.is_empty() => self.range_of(&p),
            _ => SuffixRange::EMPTY,
        }
    }

    pub fn count(&self, pattern: &[u8]) -> usize {
        self.find(pattern).len()
    }

    #[inline]
    fn lf_with(&self, row: usize, a: u8) -> usize {
        self.counts.before(a as usize) + self.bwt.rank(a, row)
    }

    /// Row of the suffix one position to the left of the suffix at `row`.
    pub fn lf(&self, row: usize) -> Result<usize> {
        self.check_row(row)?;
        Ok(self.lf_with(row, self.bwt.access(row)))
    }

    fn check_row(&self, row: usize) -> Result<()> {
        if row == 0 || row > self.rows() {
            return Err(Error::OutOfRange {
                what: "row",
                index: row,
                limit: self.rows(),
            });
        }
        Ok(())
    }

    /// Suffix start of `row` and the number of LF steps it took.
    pub fn locate_row(&self, row: usize) -> (usize, usize) {
        let mut cur = row;
        let mut steps = 0;
        loop {
            if let Some(pos) = self.sample.lookup(cur) {
                return (pos + steps, steps);
            }
            cur = self.lf_with(cur, self.bwt.access(cur));
            steps += 1;
        }
    }

    /// Text positions of every row in `rg`, ascending.
    pub fn locate(&self, rg: SuffixRange) -> Vec<usize> {
        if rg.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<usize> = rg.rows().map(|row| self.locate_row(row).0).collect();
        out.sort_unstable();
        out
    }

    /// Encoded symbols of `text[i..=j]`, 1-based with `1 <= i <= j <= n`.
    pub fn extract_symbols(&self, i: usize, j: usize) -> Result<Vec<u8>> {
        if i == 0 || i > j || j > self.n {
            return Err(Error::OutOfRange {
                what: "extract bound",
                index: if i == 0 || i > j { i } else { j },
                limit: self.n,
            });
        }
        let rate = self.sample.rate;
        // Nearest sampled suffix start at or after j + 1; the sentinel suffix
        // (row 1) covers the tail of the text.
        let k = j.div_ceil(rate);
        let (mut start, mut row) = match self.sample.inverse.get(k) {
            Some(&row) => (1 + k * rate, row),
            None => (self.rows(), 1),
        };
        let mut out = Vec::with_capacity(j - i + 1);
        while start > i {
            let a = self.bwt.access(row);
            if start - 1 <= j {
                out.push(a);
            }
            row = self.lf_with(row, a);
            start -= 1;
        }
        out.reverse();
        Ok(out)
    }

    pub fn extract(&self, i: usize, j: usize) -> Result<Vec<u8>> {
        Ok(self.alphabet.decode(&self.extract_symbols(i, j)?))
    }

    /// The whole encoded text as a [`Text`].
    pub fn text(&self) -> Text {
        let codes = self.extract_symbols(1, self.n).expect("index holds a nonempty text");
        Text::from_codes(codes, &self.alphabet).expect("extracted codes are in the alphabet")
    }

    pub(crate) fn write_payload(&self, w: &mut Writer) {
        w.usize(self.n);
        w.usizes(self.counts.as_slice());
        self.bwt.write(w);
        self.sample.write(w);
    }

    pub(crate) fn read_payload(r: &mut Reader<'_>, alphabet: Alphabet) -> Result<Self> {
        let n = r.usize()?;
        let before = r.usizes()?;
        let bwt = WaveletSequence::read(r)?;
        let sample = SaSample::read(r, n + 1)?;
        let sigma = alphabet.sigma();
        if bwt.len() != n + 1 || bwt.sigma() != sigma || before.len() != sigma + 1 {
            return Err(Error::Corrupt("FM-index shape does not match alphabet".into()));
        }
        let freq: Vec<usize> = (0..sigma as u8).map(|a| bwt.rank(a, n + 1)).collect();
        let counts = CumulativeCounts::from_frequencies(&freq);
        if counts.as_slice() != before.as_slice() || counts.frequency(SENTINEL as usize) != 1 {
            return Err(Error::Corrupt("cumulative counts disagree with BWT".into()));
        }
        Ok(FmIndex {
            alphabet,
            bwt,
            counts,
            sample,
            n,
        })
    }

    /// Serialized payload size in bytes.
    pub fn payload_bytes(&self) -> usize {
        8 + 8 + 8 * (self.counts.sigma() + 1) + self.bwt.payload_bytes() + self.sample.payload_bytes()
    }
}
