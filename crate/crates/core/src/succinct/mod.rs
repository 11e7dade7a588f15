//! Rank/select bit arrays and wavelet sequences.

mod bitarray;
mod wavelet;

pub use bitarray::BitArray;
pub use wavelet::WaveletSequence;
