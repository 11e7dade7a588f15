use std::io;

use thiserror::Error;

/// Errors produced while building, querying or persisting indexes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("alphabet overflow: {0} distinct bytes (at most 250 supported)")]
    AlphabetOverflow(usize),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("out of range: {what} {index} (valid up to {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("select overflow: rank {rank} requested, only {available} available")]
    SelectOverflow { rank: usize, available: usize },
    #[error("symbol out of alphabet: {symbol} (alphabet size {sigma})")]
    SymbolOutOfAlphabet { symbol: usize, sigma: usize },
    #[error("input too large for exact LCS ({cells} cells)")]
    InputTooLarge { cells: u128 },
    #[error("invalid alignment: {0}")]
    InvalidAlignment(String),
    #[error("not a common subsequence: {0}")]
    NotCommonSubsequence(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("reference mismatch: index was built against a different reference")]
    ReferenceMismatch,
    #[error("corrupt container: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
