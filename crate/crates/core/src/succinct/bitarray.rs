use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;
const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / WORD_BITS;
const SUPER_BITS: usize = 65536;
const BLOCKS_PER_SUPER: usize = SUPER_BITS / BLOCK_BITS;

/// Immutable bit sequence with constant-time rank and logarithmic select.
///
/// The rank directory keeps an absolute count every 65536 bits and a
/// 16-bit relative count every 512 bits. Select binary-searches the block
/// counts and then scans at most eight words.
///
/// Positions are 1-based: `get(1)` is the first bit and `rank1(i)` counts
/// ones among the first `i` bits.
#[derive(Clone, Debug, Default)]
pub struct BitArray {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    supers: Vec<u64>,
    blocks: Vec<u16>,
}

impl PartialEq for BitArray {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for BitArray {}

impl BitArray {
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert_eq!(words.len(), len.div_ceil(WORD_BITS), "word count does not match length");
        let mut b = BitArray {
            words,
            len,
            ..Default::default()
        };
        b.clear_padding();
        b.build_directory();
        b
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// All ones except zeros at the given 1-based positions.
    pub fn with_zeros_at(len: usize, zeros: &[usize]) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(WORD_BITS)];
        for &p in zeros {
            assert!(p >= 1 && p <= len, "position {p} outside [1, {len}]");
            words[(p - 1) / WORD_BITS] &= !(1 << ((p - 1) % WORD_BITS));
        }
        Self::from_words(words, len)
    }

    /// All zeros except ones at the given 1-based positions.
    pub fn with_ones_at(len: usize, ones: &[usize]) -> Self {
        let mut words = vec![0; len.div_ceil(WORD_BITS)];
        for &p in ones {
            assert!(p >= 1 && p <= len, "position {p} outside [1, {len}]");
            words[(p - 1) / WORD_BITS] |= 1 << ((p - 1) % WORD_BITS);
        }
        Self::from_words(words, len)
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn build_directory(&mut self) {
        let nblocks = self.len / BLOCK_BITS + 1;
        self.supers = Vec::with_capacity(nblocks / BLOCKS_PER_SUPER + 1);
        self.blocks = Vec::with_capacity(nblocks);
        let mut total = 0u64;
        for b in 0..nblocks {
            if b % BLOCKS_PER_SUPER == 0 {
                self.supers.push(total);
            }
            self.blocks.push((total - self.supers[b / BLOCKS_PER_SUPER]) as u16);
            let lo = (b * WORDS_PER_BLOCK).min(self.words.len());
            let hi = ((b + 1) * WORDS_PER_BLOCK).min(self.words.len());
            total += self.words[lo..hi]
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>();
        }
        self.ones = total as usize;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    /// Bit at 1-based position `pos`.
    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        assert!(pos >= 1 && pos <= self.len, "bit position {pos} outside [1, {}]", self.len);
        let i = pos - 1;
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn ones_before_block(&self, b: usize) -> usize {
        self.supers[b / BLOCKS_PER_SUPER] as usize + self.blocks[b] as usize
    }

    /// Ones among the first `i` bits. Panics when `i > len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} beyond length {}", self.len);
        let b = i / BLOCK_BITS;
        let mut r = self.ones_before_block(b);
        let last_word = i / WORD_BITS;
        for w in &self.words[b * WORDS_PER_BLOCK..last_word] {
            r += w.count_ones() as usize;
        }
        let rem = i % WORD_BITS;
        if rem != 0 {
            r += (self.words[last_word] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `j`-th one. Panics when `j` is 0 or exceeds the count.
    pub fn select1(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.ones, "select1({j}) with {} ones", self.ones);
        self.select_impl(j, |s, b| s.ones_before_block(b), |w| w)
    }

    /// Position of the `j`-th zero. Panics when `j` is 0 or exceeds the count.
    pub fn select0(&self, j: usize) -> usize {
        assert!(
            j >= 1 && j <= self.count_zeros(),
            "select0({j}) with {} zeros",
            self.count_zeros()
        );
        self.select_impl(j, |s, b| b * BLOCK_BITS - s.ones_before_block(b), |w| !w)
    }

    fn select_impl(
        &self,
        j: usize,
        before_block: impl Fn(&Self, usize) -> usize,
        word: impl Fn(u64) -> u64,
    ) -> usize {
        let (mut lo, mut hi) = (0, self.blocks.len());
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if before_block(self, mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = j - before_block(self, lo);
        let mut w = lo * WORDS_PER_BLOCK;
        loop {
            let bits = word(self.words[w]);
            let c = bits.count_ones() as usize;
            if c >= remaining {
                return w * WORD_BITS + select_in_word(bits, remaining) + 1;
            }
            remaining -= c;
            w += 1;
        }
    }

    /// Checked rank: `Err` when `i > len`.
    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                what: "bit array position",
                index: i,
                limit: self.len,
            });
        }
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    /// Checked select: `Err` when fewer than `j` bits equal `bit`.
    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let available = if bit { self.ones } else { self.count_zeros() };
        if j == 0 || j > available {
            return Err(Error::SelectOverflow { rank: j, available });
        }
        Ok(if bit { self.select1(j) } else { self.select0(j) })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1)
    }

    pub(crate) fn write(&self, w: &mut Writer) {
        w.usize(self.len);
        for &word in &self.words {
            w.u64(word);
        }
    }

    pub(crate) fn read(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let nwords = len.div_ceil(WORD_BITS);
        if nwords.saturating_mul(8) > r.remaining() {
            return Err(Error::Corrupt(format!("bit array length {len} exceeds payload")));
        }
        let words = (0..nwords).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        let rem = len % WORD_BITS;
        if rem != 0 && words.last().is_some_and(|&w| w >> rem != 0) {
            return Err(Error::Corrupt("nonzero padding bits".into()));
        }
        Ok(Self::from_words(words, len))
    }

    /// Serialized size in bytes.
    pub fn payload_bytes(&self) -> usize {
        8 + 8 * self.words.len()
    }
}

#[inline]
fn select_in_word(mut w: u64, k: usize) -> usize {
    for _ in 1..k {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}
