//! Seeded random DNA and mutated copies, for demos, benchmarks and the
//! verification suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASES: &[u8; 4] = b"ACGT";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random `ACGT` string.
pub fn random_dna(n: usize, seed: u64) -> Vec<u8> {
    let mut r = rng(seed);
    (0..n).map(|_| *BASES.choose(&mut r).unwrap()).collect()
}

/// Copy of `text` with each position substituted (to a different base)
/// with probability `sub_rate`, and deleted or followed by an inserted base
/// with probability `indel_rate / 2` each.
pub fn mutate(text: &[u8], sub_rate: f64, indel_rate: f64, seed: u64) -> Vec<u8> {
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::with_capacity(text.len() + text.len() / 16);
    for &c in text {
        let roll: f64 = r.gen();
        if roll < indel_rate / 2.0 {
            continue;
        }
        if r.gen::<f64>() < sub_rate {
            let others: Vec<u8> = BASES.iter().copied().filter(|&b| b != c).collect();
            out.push(*others.choose(&mut r).unwrap());
        } else {
            out.push(c);
        }
        if roll >= indel_rate / 2.0 && roll < indel_rate {
            out.push(*BASES.choose(&mut r).unwrap());
        }
    }
    if out.is_empty() {
        out.push(BASES[0]);
    }
    out
}

/// Random substring of `text` of length in `[min_len, max_len]`.
pub fn sample_pattern<R: Rng>(text: &[u8], min_len: usize, max_len: usize, r: &mut R) -> Vec<u8> {
    let len = r.gen_range(min_len..=max_len).min(text.len());
    let start = r.gen_range(0..=text.len() - len);
    text[start..start + len].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_reproducible() {
        assert_eq!(random_dna(100, 7), random_dna(100, 7));
        assert_ne!(random_dna(100, 7), random_dna(100, 8));
        let s = random_dna(10_000, 1);
        assert!(s.iter().all(|c| BASES.contains(c)));
        assert_eq!(mutate(&s, 0.01, 0.001, 3), mutate(&s, 0.01, 0.001, 3));
    }

    #[test]
    fn mutation_rates_are_roughly_right() {
        let s = random_dna(100_000, 2);
        let m = mutate(&s, 0.01, 0.0, 5);
        assert_eq!(m.len(), s.len());
        let diff = s.iter().zip(&m).filter(|(a, b)| a != b).count();
        assert!((800..1200).contains(&diff), "{diff}");
        assert_eq!(mutate(&s, 0.0, 0.0, 5), s);
        let m = mutate(&s, 0.0, 0.02, 5);
        assert_ne!(m.len(), 0);
    }
}
