//! Alphabet mapping, text ingestion, suffix arrays, BWT construction and
//! cumulative symbol counts.

mod sais;

use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};

/// Code of the sentinel terminating every text.
pub const SENTINEL: u8 = 0;

const MAX_DISTINCT_BYTES: usize = 250;
const UNMAPPED: u8 = 0;

/// Input format accepted by [`load_text`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Raw bytes; trailing line terminators are dropped.
    Plain,
    /// First FASTA record; headers and whitespace removed, residues upper-cased.
    Fasta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetKind {
    /// `$ < A < C < G < N < T`, any other byte maps to `N`.
    Dna,
    /// Distinct bytes of the input in byte-value order.
    Bytes,
}

/// Dense symbol codes for input bytes. Code 0 is the sentinel and is never
/// produced from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    kind: AlphabetKind,
    byte_of: Vec<u8>,
    code_of: [u8; 256],
    catch_all: Option<u8>,
}

impl Alphabet {
    pub fn dna() -> Self {
        let byte_of = b"$ACGNT".to_vec();
        let mut code_of = [UNMAPPED; 256];
        for (code, &b) in byte_of.iter().enumerate().skip(1) {
            code_of[b as usize] = code as u8;
            code_of[b.to_ascii_lowercase() as usize] = code as u8;
        }
        Alphabet {
            kind: AlphabetKind::Dna,
            byte_of,
            code_of,
            catch_all: Some(4),
        }
    }

    /// Builds a byte alphabet covering every byte of every input.
    pub fn from_texts<'a, I>(texts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [u8]>,
    {
        let mut seen = [false; 256];
        for t in texts {
            for &b in t {
                seen[b as usize] = true;
            }
        }
        let distinct: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_distinct_bytes(&distinct)
    }

    fn from_distinct_bytes(distinct: &[u8]) -> Result<Self> {
        if distinct.len() > MAX_DISTINCT_BYTES {
            return Err(Error::AlphabetOverflow(distinct.len()));
        }
        let mut byte_of = vec![b'$'];
        byte_of.extend_from_slice(distinct);
        let mut code_of = [UNMAPPED; 256];
        for (code, &b) in byte_of.iter().enumerate().skip(1) {
            if code_of[b as usize] != UNMAPPED {
                return Err(Error::AlphabetMismatch(format!("duplicate byte {b:#04x}")));
            }
            code_of[b as usize] = code as u8;
        }
        Ok(Alphabet {
            kind: AlphabetKind::Bytes,
            byte_of,
            code_of,
            catch_all: None,
        })
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    /// Number of codes including the sentinel.
    pub fn sigma(&self) -> usize {
        self.byte_of.len()
    }

    /// Code that unknown bytes collapse to, if any.
    pub fn catch_all(&self) -> Option<u8> {
        self.catch_all
    }

    pub fn byte_of(&self, code: u8) -> u8 {
        self.byte_of[code as usize]
    }

    pub fn code_of(&self, byte: u8) -> Option<u8> {
        match self.code_of[byte as usize] {
            UNMAPPED => None,
            c => Some(c),
        }
    }

    /// Encodes text bytes, sending unknown bytes to the catch-all symbol.
    pub fn encode(&self, bytes: &[u8]) -> Result<Vec<u8>> {
        bytes
            .iter()
            .map(|&b| {
                self.code_of(b).or(self.catch_all).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("byte {b:#04x} is not in the alphabet"))
                })
            })
            .collect()
    }

    /// Encodes a query pattern. Unknown bytes make the whole pattern
    /// unmatchable, so `None` is returned instead of a catch-all mapping.
    pub fn encode_pattern(&self, bytes: &[u8]) -> Option<Vec<u8>> {
        bytes.iter().map(|&b| self.code_of(b)).collect()
    }

    pub fn decode(&self, codes: &[u8]) -> Vec<u8> {
        codes.iter().map(|&c| self.byte_of(c)).collect()
    }

    pub(crate) fn write(&self, w: &mut Writer) {
        match self.kind {
            AlphabetKind::Dna => w.u64(0),
            AlphabetKind::Bytes => w.u64(1),
        }
        w.usize(self.byte_of.len() - 1);
        w.bytes(&self.byte_of[1..]);
    }

    pub(crate) fn read(r: &mut Reader<'_>) -> Result<Self> {
        let kind = r.u64()?;
        let len = r.len_prefix(1)?;
        let bytes = r.take(len)?;
        match kind {
            0 if bytes == b"ACGNT" => Ok(Alphabet::dna()),
            1 => {
                if bytes.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Corrupt("alphabet bytes not sorted".into()));
                }
                Alphabet::from_distinct_bytes(bytes)
            }
            _ => Err(Error::Corrupt(format!("unknown alphabet kind {kind}"))),
        }
    }
}

/// A sentinel-terminated symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

impl Text {
    /// Encodes `bytes` with `alphabet` and appends the sentinel.
    pub fn encode(bytes: &[u8], alphabet: &Alphabet) -> Result<Self> {
        if bytes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut symbols = alphabet.encode(bytes)?;
        symbols.push(SENTINEL);
        Ok(Text {
            symbols,
            alphabet: alphabet.clone(),
        })
    }

    /// Wraps already-encoded codes (no sentinel) and appends the sentinel.
    pub fn from_codes(mut codes: Vec<u8>, alphabet: &Alphabet) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sigma = alphabet.sigma();
        if let Some(&bad) = codes.iter().find(|&&c| c == SENTINEL || c as usize >= sigma) {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: bad as usize,
                sigma,
            });
        }
        codes.push(SENTINEL);
        Ok(Text {
            symbols: codes,
            alphabet: alphabet.clone(),
        })
    }

    /// All symbols including the trailing sentinel.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Text length `n`, not counting the sentinel.
    pub fn len(&self) -> usize {
        self.symbols.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Symbol at 1-based position `pos` in `[1, n + 1]`.
    pub fn get(&self, pos: usize) -> u8 {
        self.symbols[pos - 1]
    }

    /// The original text bytes (catch-all substitutions are not undone).
    pub fn to_bytes(&self) -> Vec<u8> {
        self.alphabet.decode(&self.symbols[..self.len()])
    }
}

/// Extracts the residues of the first FASTA record.
pub fn fasta_residues(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut seen_header = false;
    for line in bytes.split(|&b| b == b'\n') {
        if line.first() == Some(&b'>') {
            if seen_header || !out.is_empty() {
                break;
            }
            seen_header = true;
            continue;
        }
        if line.first() == Some(&b';') {
            continue;
        }
        out.extend(
            line.iter()
                .filter(|b| !b.is_ascii_whitespace())
                .map(|b| b.to_ascii_uppercase()),
        );
    }
    out
}

fn strip_line_end(mut bytes: &[u8]) -> &[u8] {
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    bytes
}

/// Reads a text. Plain input gets a byte alphabet built from its content;
/// FASTA input uses the DNA alphabet.
pub fn load_text(bytes: &[u8], format: Format) -> Result<Text> {
    match format {
        Format::Plain => {
            let body = strip_line_end(bytes);
            if body.is_empty() {
                return Err(Error::EmptyInput);
            }
            let alphabet = Alphabet::from_texts([body])?;
            Text::encode(body, &alphabet)
        }
        Format::Fasta => Text::encode(&fasta_residues(bytes), &Alphabet::dna()),
    }
}

/// Reads a text against an existing alphabet (e.g. a relative target
/// against its reference).
pub fn load_text_with(bytes: &[u8], format: Format, alphabet: &Alphabet) -> Result<Text> {
    match format {
        Format::Plain => Text::encode(strip_line_end(bytes), alphabet),
        Format::Fasta => Text::encode(&fasta_residues(bytes), alphabet),
    }
}

/// Reads two texts over one alphabet: DNA for FASTA, otherwise the bytes
/// occurring in either input.
pub fn load_text_pair(a: &[u8], b: &[u8], format: Format) -> Result<(Text, Text)> {
    let alphabet = match format {
        Format::Plain => Alphabet::from_texts([strip_line_end(a), strip_line_end(b)])?,
        Format::Fasta => Alphabet::dna(),
    };
    Ok((
        load_text_with(a, format, &alphabet)?,
        load_text_with(b, format, &alphabet)?,
    ))
}

/// Suffix order of a sentinel-terminated text; `order()[row - 1]` is the
/// 1-based start of the `row`-th smallest suffix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArray {
    order: Vec<usize>,
}

impl SuffixArray {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Start position of the suffix at `row`.
    pub fn get(&self, row: usize) -> usize {
        self.order[row - 1]
    }

    /// `inverse()[pos - 1]` is the row of the suffix starting at `pos`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.order.len()];
        for (row0, &pos) in self.order.iter().enumerate() {
            inv[pos - 1] = row0 + 1;
        }
        inv
    }
}

pub fn build_suffix_array(t: &Text) -> SuffixArray {
    let s: Vec<u32> = t.symbols().iter().map(|&c| c as u32).collect();
    SuffixArray {
        order: suffix_order(&s, t.alphabet().sigma()),
    }
}

/// 1-based suffix order of an arbitrary integer sequence ending in a unique
/// 0 with every symbol below `sigma`.
pub fn suffix_order(s: &[u32], sigma: usize) -> Vec<usize> {
    sais::sais(s, sigma).into_iter().map(|p| p + 1).collect()
}

/// Symbol cyclically preceding each suffix in suffix order.
pub fn bwt(t: &Text, sa: &SuffixArray) -> Vec<u8> {
    let symbols = t.symbols();
    let last = symbols.len() - 1;
    sa.order()
        .iter()
        .map(|&pos| if pos == 1 { symbols[last] } else { symbols[pos - 2] })
        .collect()
}

/// `before(a)` = number of symbols strictly smaller than `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeCounts {
    before: Vec<usize>,
}

impl CumulativeCounts {
    pub fn from_frequencies(freq: &[usize]) -> Self {
        let mut before = Vec::with_capacity(freq.len() + 1);
        let mut acc = 0;
        before.push(0);
        for &f in freq {
            acc += f;
            before.push(acc);
        }
        CumulativeCounts { before }
    }

    pub fn from_symbols(symbols: &[u8], sigma: usize) -> Self {
        let mut freq = vec![0usize; sigma];
        for &c in symbols {
            freq[c as usize] += 1;
        }
        Self::from_frequencies(&freq)
    }

    /// Valid for `a` in `[0, sigma]`; `before(sigma)` is the total length.
    pub fn before(&self, a: usize) -> usize {
        self.before[a]
    }

    pub fn frequency(&self, a: usize) -> usize {
        self.before[a + 1] - self.before[a]
    }

    pub fn sigma(&self) -> usize {
        self.before.len() - 1
    }

    pub fn total(&self) -> usize {
        *self.before.last().unwrap()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.before
    }
}

pub fn char_counts(t: &Text) -> CumulativeCounts {
    CumulativeCounts::from_symbols(t.symbols(), t.alphabet().sigma())
}
