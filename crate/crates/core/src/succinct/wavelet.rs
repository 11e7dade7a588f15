use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};

use super::BitArray;

/// Immutable symbol sequence with access and per-symbol rank.
///
/// Symbols use fixed-width binary codes (a balanced code tree), stored
/// level by level in the wavelet-matrix layout: level `l` holds bit `l`
/// (most significant first) of every symbol, with the sequence stably
/// partitioned by the previous level's bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletSequence {
    len: usize,
    sigma: usize,
    levels: Vec<BitArray>,
    zeros: Vec<usize>,
}

fn code_width(sigma: usize) -> usize {
    let max = sigma.saturating_sub(1).max(1);
    (usize::BITS - max.leading_zeros()) as usize
}

impl WaveletSequence {
    /// Panics if any symbol is `>= sigma`.
    pub fn new(symbols: &[u8], sigma: usize) -> Self {
        assert!(sigma >= 1);
        assert!(
            symbols.iter().all(|&c| (c as usize) < sigma),
            "symbol outside alphabet of size {sigma}"
        );
        let width = code_width(sigma);
        let mut current = symbols.to_vec();
        let mut levels = Vec::with_capacity(width);
        let mut zeros = Vec::with_capacity(width);
        for level in 0..width {
            let shift = width - 1 - level;
            let bits = BitArray::from_bools(current.iter().map(|&c| (c >> shift) & 1 == 1));
            zeros.push(bits.count_zeros());
            let (mut lo, hi): (Vec<u8>, Vec<u8>) =
                current.iter().partition(|&&c| (c >> shift) & 1 == 0);
            lo.extend(hi);
            current = lo;
            levels.push(bits);
        }
        WaveletSequence {
            len: symbols.len(),
            sigma,
            levels,
            zeros,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Symbol at 1-based position `i`. Panics when out of range.
    #[inline]
    pub fn access(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len, "access({i}) on length {}", self.len);
        let mut pos = i - 1;
        let mut code = 0u8;
        for (bits, &zeros) in self.levels.iter().zip(&self.zeros) {
            code <<= 1;
            if bits.get(pos + 1) {
                code |= 1;
                pos = zeros + bits.rank1(pos);
            } else {
                pos = bits.rank0(pos);
            }
        }
        code
    }

    /// Occurrences of `a` among the first `i` symbols. Panics on bad input.
    #[inline]
    pub fn rank(&self, a: u8, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} beyond length {}", self.len);
        assert!((a as usize) < self.sigma, "symbol {a} outside alphabet");
        let width = self.levels.len();
        let (mut lo, mut hi) = (0, i);
        for (level, (bits, &zeros)) in self.levels.iter().zip(&self.zeros).enumerate() {
            if (a >> (width - 1 - level)) & 1 == 1 {
                lo = zeros + bits.rank1(lo);
                hi = zeros + bits.rank1(hi);
            } else {
                lo = bits.rank0(lo);
                hi = bits.rank0(hi);
            }
        }
        hi - lo
    }

    pub fn try_rank(&self, a: u8, i: usize) -> Result<usize> {
        if a as usize >= self.sigma {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: a as usize,
                sigma: self.sigma,
            });
        }
        if i > self.len {
            return Err(Error::OutOfRange {
                what: "sequence position",
                index: i,
                limit: self.len,
            });
        }
        Ok(self.rank(a, i))
    }

    pub fn try_access(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                what: "sequence position",
                index: i,
                limit: self.len,
            });
        }
        Ok(self.access(i))
    }

    /// Decodes the whole sequence.
    pub fn to_vec(&self) -> Vec<u8> {
        (1..=self.len).map(|i| self.access(i)).collect()
    }

    pub(crate) fn write(&self, w: &mut Writer) {
        w.usize(self.len);
        w.usize(self.sigma);
        for level in &self.levels {
            level.write(w);
        }
    }

    pub(crate) fn read(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let sigma = r.usize()?;
        if sigma == 0 || sigma > 256 {
            return Err(Error::Corrupt(format!("wavelet alphabet size {sigma}")));
        }
        let width = code_width(sigma);
        let mut levels = Vec::with_capacity(width);
        let mut zeros = Vec::with_capacity(width);
        for _ in 0..width {
            let bits = BitArray::read(r)?;
            if bits.len() != len {
                return Err(Error::Corrupt("wavelet level length mismatch".into()));
            }
            zeros.push(bits.count_zeros());
            levels.push(bits);
        }
        let ws = WaveletSequence {
            len,
            sigma,
            levels,
            zeros,
        };
        // Every code must decode to a symbol inside the alphabet.
        if (sigma as u64) < (1u64 << width) {
            let counted: usize = (0..sigma as u8).map(|a| ws.rank(a, len)).sum();
            if counted != len {
                return Err(Error::Corrupt("wavelet holds symbols outside alphabet".into()));
            }
        }
        Ok(ws)
    }

    pub fn payload_bytes(&self) -> usize {
        16 + self.levels.iter().map(BitArray::payload_bytes).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_sequence() {
        // "BB$AA" with $=0, A=1, B=2
        let w = WaveletSequence::new(&[2, 2, 0, 1, 1], 3);
        assert_eq!(w.rank(2, 2), 2);
        assert_eq!(w.access(3), 0);
        for a in 0..3 {
            assert_eq!(w.rank(a, 0), 0);
        }
        assert!(matches!(w.try_rank(3, 1), Err(Error::SymbolOutOfAlphabet { .. })));
        assert!(w.try_access(0).is_err());
        assert!(w.try_access(6).is_err());
    }

    #[test]
    fn displayed_bwt_counts() {
        let dna = crate::textcore::Alphabet::dna();
        let codes = dna.encode(b"TGGGATCAAAATGG").unwrap();
        let w = WaveletSequence::new(&codes, dna.sigma());
        assert_eq!(w.rank(dna.code_of(b'G').unwrap(), 14), 5);
        let codes = dna.encode(b"TGGGATTAAAAGTGG").unwrap();
        let w = WaveletSequence::new(&codes, dna.sigma());
        assert_eq!(w.access(1), dna.code_of(b'T').unwrap());
    }

    #[test]
    fn single_symbol_alphabet() {
        let w = WaveletSequence::new(&[0, 0, 0], 1);
        assert_eq!(w.rank(0, 3), 3);
        assert_eq!(w.access(2), 0);
        let empty = WaveletSequence::new(&[], 6);
        assert_eq!(empty.rank(3, 0), 0);
    }

    proptest! {
        #[test]
        fn matches_naive(sigma in 1usize..=17, seq in proptest::collection::vec(any::<u8>(), 0..600)) {
            let seq: Vec<u8> = seq.into_iter().map(|c| c % sigma as u8).collect();
            let w = WaveletSequence::new(&seq, sigma);
            prop_assert_eq!(w.to_vec(), seq.clone());
            let mut counts = vec![0usize; sigma];
            for i in 0..=seq.len() {
                for (a, &c) in counts.iter().enumerate() {
                    prop_assert_eq!(w.rank(a as u8, i), c);
                }
                if i < seq.len() { counts[seq[i] as usize] += 1; }
            }
            prop_assert_eq!((0..sigma).map(|a| w.rank(a as u8, seq.len())).sum::<usize>(), seq.len());

            let mut wr = Writer::new();
            w.write(&mut wr);
            let buf = wr.finish();
            prop_assert_eq!(buf.len(), w.payload_bytes());
            prop_assert_eq!(WaveletSequence::read(&mut Reader::new(&buf)).unwrap(), w);
        }
    }
}
