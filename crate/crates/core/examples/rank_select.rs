// Rank and select on bit arrays and wavelet sequences. Everything is 1-based:
// `rank(i)` counts within the first `i` positions.

use std::error::Error;

use relfm::{BitArray, WaveletSequence};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bits = BitArray::from_bools("0110100111".chars().map(|c| c == '1'));
    println!("len {} ones {}", bits.len(), bits.count_ones());
    for i in [0, 3, 5, 10] {
        println!("rank1({i}) = {}  rank0({i}) = {}", bits.rank1(i), bits.rank0(i));
    }
    assert_eq!(bits.rank1(5), 3);
    assert_eq!(bits.select1(4), 8);
    assert_eq!(bits.select0(3), 6);

    let big = BitArray::from_bools((0..100_000).map(|i| i % 3 == 0));
    assert_eq!(big.rank1(99_999), 33_333);
    assert_eq!(big.select1(33_333), 99_997);
    println!("large array: {} bytes for {} bits", big.payload_bytes(), big.len());

    // symbols are alphabet codes 0..sigma
    let seq = [2u8, 0, 3, 1, 2, 2, 4, 0, 3];
    let wt = WaveletSequence::new(&seq, 5);
    for (k, &s) in seq.iter().enumerate() {
        assert_eq!(wt.access(k + 1), s);
    }
    for a in 0..5u8 {
        let direct = seq.iter().filter(|&&s| s == a).count();
        println!("symbol {a}: rank at end {} (direct {direct})", wt.rank(a, seq.len()));
        assert_eq!(wt.rank(a, seq.len()), direct);
    }
    assert_eq!(wt.rank(2, 5), 2);
    assert!(wt.try_rank(2, 10).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
