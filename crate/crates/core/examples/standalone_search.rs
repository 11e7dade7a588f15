// Build an FM-index over a byte text, then count, locate and extract.
//
// cargo run --example standalone_search

use std::error::Error;

use relfm::textcore::{load_text, Format};
use relfm::FmIndex;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let text = load_text(b"she sells sea shells by the sea shore", Format::Plain)?;
    let ix = FmIndex::build(&text, 4);
    println!("n = {}, sigma = {}", ix.len(), ix.alphabet().sigma());

    for pat in ["sea", "s", "shells", "shore ", "xyz"] {
        let rg = ix.find(pat.as_bytes());
        let pos = ix.locate(rg);
        println!("{pat:>8}: count {} at {pos:?}", rg.len());
    }
    assert_eq!(ix.locate(ix.find(b"sea")), vec![11, 29]);
    assert_eq!(ix.count(b"xyz"), 0);

    // positions are 1-based and inclusive
    let word = ix.extract(5, 9)?;
    assert_eq!(word, b"sells");

    // walking LF from the sentinel row spells the text backwards
    let mut row = 1;
    let mut back = Vec::new();
    for _ in 0..ix.len() {
        let c = ix.bwt().access(row);
        back.push(ix.alphabet().byte_of(c));
        row = ix.lf(row)?;
    }
    back.reverse();
    assert_eq!(back, text.to_bytes());
    println!("recovered: {}", String::from_utf8_lossy(&back));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
