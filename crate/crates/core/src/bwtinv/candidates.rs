use crate::error::{Error, Result};
use crate::textcore::{suffix_order, Text};

/// Up to two candidate partners in `S2` for each character of `S1`.
///
/// Index and values are character positions (1-based, sentinel included).
/// The suffix *following* character `c` starts at `c + 1`, wrapping to 1 for
/// the sentinel. `first(c)` is the `S2` character whose following suffix
/// comes immediately after that of `c` in the merged suffix order of both
/// texts; `second(c)` is the one whose following suffix is the largest
/// `S2` suffix before it. A candidate is kept only if the two characters
/// are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoChoiceArray {
    first: Vec<Option<usize>>,
    second: Vec<Option<usize>>,
}

impl TwoChoiceArray {
    /// From explicit entries, `entries[c - 1] = (first(c), second(c))`.
    pub fn from_entries(entries: &[(Option<usize>, Option<usize>)]) -> Self {
        TwoChoiceArray {
            first: entries.iter().map(|e| e.0).collect(),
            second: entries.iter().map(|e| e.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn first(&self, c: usize) -> Option<usize> {
        self.first[c - 1]
    }

    pub fn second(&self, c: usize) -> Option<usize> {
        self.second[c - 1]
    }

    /// Candidate `b` (1 or 2) of `c`.
    pub fn get(&self, c: usize, b: u8) -> Option<usize> {
        match b {
            1 => self.first(c),
            2 => self.second(c),
            _ => None,
        }
    }

    pub fn defined(&self) -> usize {
        self.first.iter().chain(&self.second).filter(|v| v.is_some()).count()
    }
}

/// One sweep over the suffix array of `S1 # S2 $`, where `#` sorts between
/// the sentinel and every real symbol.
pub fn build_candidates(s1: &Text, s2: &Text) -> Result<TwoChoiceArray> {
    if s1.alphabet() != s2.alphabet() {
        return Err(Error::AlphabetMismatch(
            "candidate search needs both texts over one alphabet".into(),
        ));
    }
    let (t1, t2) = (s1.symbols(), s2.symbols());
    let (rows1, rows2) = (t1.len(), t2.len());
    let mut concat = Vec::with_capacity(rows1 + rows2);
    concat.extend(t1[..rows1 - 1].iter().map(|&c| c as u32 + 2));
    concat.push(1);
    concat.extend(t2[..rows2 - 1].iter().map(|&c| c as u32 + 2));
    concat.push(0);
    let order = suffix_order(&concat, s1.alphabet().sigma() + 2);

    let preceding = |start: usize, rows: usize| if start == 1 { rows } else { start - 1 };
    let mut first = vec![None; rows1];
    let mut second = vec![None; rows1];
    let mut pending: Option<usize> = None;
    let mut last_s2: Option<usize> = None;
    for &p in &order {
        if p <= rows1 {
            // S1 suffix (the separator position stands for S1's sentinel suffix)
            let c = preceding(p, rows1);
            if let Some(j) = last_s2.filter(|&j| t2[j - 1] == t1[c - 1]) {
                second[c - 1] = Some(j);
            }
            pending = Some(c);
        } else {
            let j = preceding(p - rows1, rows2);
            if let Some(c) = pending.take() {
                if t1[c - 1] == t2[j - 1] {
                    first[c - 1] = Some(j);
                }
            }
            last_s2 = Some(j);
        }
    }
    Ok(TwoChoiceArray { first, second })
}
