use crate::error::{Error, Result};
use crate::textcore::{Alphabet, Format, Text};

fn check_permutation(p: &[usize], name: &str) -> Result<()> {
    let mut seen = vec![false; p.len() + 1];
    for &v in p {
        if v == 0 || v > p.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidPermutation(format!(
                "{name} is not a permutation of 1..={}",
                p.len()
            )));
        }
    }
    if p.is_empty() {
        return Err(Error::InvalidPermutation(format!("{name} is empty")));
    }
    Ok(())
}

/// `S1 = A B^p1[1] A B^p1[2] ...` and `S2 = A C^p2[1] A C^p2[2] ...`.
///
/// A BWT-invariant common subsequence containing every `A` of `S2` exists
/// exactly when `p2` occurs as a pattern in `p1`.
pub fn reduction_strings(p1: &[usize], p2: &[usize]) -> Result<(Vec<u8>, Vec<u8>)> {
    check_permutation(p1, "first permutation")?;
    check_permutation(p2, "second permutation")?;
    if p2.len() > p1.len() {
        return Err(Error::InvalidPermutation(
            "second permutation is longer than the first".into(),
        ));
    }
    let build = |p: &[usize], fill: u8| -> Vec<u8> {
        p.iter()
            .flat_map(|&k| std::iter::once(b'A').chain(std::iter::repeat_n(fill, k)))
            .collect()
    };
    Ok((build(p1, b'B'), build(p2, b'C')))
}

/// [`reduction_strings`] encoded over one shared `{A, B, C}` alphabet.
pub fn reduction_texts(p1: &[usize], p2: &[usize]) -> Result<(Text, Text)> {
    let (s1, s2) = reduction_strings(p1, p2)?;
    let alphabet = Alphabet::from_texts([&b"ABC"[..]])?;
    Ok((
        crate::textcore::load_text_with(&s1, Format::Plain, &alphabet)?,
        crate::textcore::load_text_with(&s2, Format::Plain, &alphabet)?,
    ))
}
