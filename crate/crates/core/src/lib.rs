//! FM-indexes over a reference text and *relative* FM-indexes for similar
//! texts.
//!
//! A relative index answers counting queries on a target text through the
//! reference's BWT plus a small set of difference structures built from a
//! common subsequence of the two BWTs. When that subsequence is chosen so
//! that its characters keep the same relative order in both texts
//! ([`bwtinv`]), the reference's suffix-array samples can be reused to
//! locate occurrences in the target as well.
//!
//! Rows and text positions are 1-based at every public boundary. Every
//! text carries a trailing sentinel, so a text of `n` characters has
//! `n + 1` suffixes and a BWT of length `n + 1`.

pub mod bwtinv;
pub mod cli;
pub mod container;
pub mod error;
pub mod fmindex;
pub mod lcsalign;
pub mod relcount;
pub mod succinct;
pub mod synth;
pub mod textcore;
pub mod verify;

mod bytes;

pub use error::{Error, Result};
pub use fmindex::{FmIndex, SaSample, SuffixRange};
pub use lcsalign::{Alignment, PartitionSpec};
pub use relcount::RelativeIndex;
pub use succinct::{BitArray, WaveletSequence};
pub use textcore::{Alphabet, CumulativeCounts, Format, SuffixArray, Text};
