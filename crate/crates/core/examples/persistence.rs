// Saving and loading indexes. Relative containers record a digest of the
// reference they were built against and refuse any other.

use std::error::Error;
use std::sync::Arc;

use relfm::bwtinv::{invariant_subsequence, rel_locate, InvarianceChecker, RelativeSample};
use relfm::container::{self, tag_name};
use relfm::synth::{mutate, random_dna};
use relfm::textcore::{load_text_pair, Format};
use relfm::{FmIndex, RelativeIndex};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let reference = random_dna(10_000, 31);
    let target = mutate(&reference, 0.01, 0.0, 32);
    let (t1, t2) = load_text_pair(&reference, &target, Format::Fasta)?;

    let ix1 = Arc::new(FmIndex::build(&t1, 32));
    let g = invariant_subsequence(&t1, &t2)?;
    let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g)?;
    let ri = RelativeIndex::build(ix1.clone(), &FmIndex::build(&t2, 32).bwt().to_vec(), &al)?;
    let rs = RelativeSample::new(&g, ix1.rows(), ri.rows());

    let dir = std::env::temp_dir().join(format!("relfm-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let (ref_path, rel_path) = (dir.join("ref.rfmx"), dir.join("target.rfmx"));
    container::write_file(&ref_path, &container::save_index(&ix1))?;
    container::write_file(&rel_path, &container::save_relative(&ri, Some(&rs)))?;

    let rel_bytes = container::read_file(&rel_path)?;
    let (c, meta) = container::open(&rel_bytes)?;
    println!("{:?} container, n1={} n2={}", meta.kind, meta.n1, meta.n2);
    for (tag, size) in c.sizes() {
        println!("  {} {size} bytes", tag_name(tag));
    }

    let loaded_ref = Arc::new(container::load_index(&container::read_file(&ref_path)?)?);
    let bundle = container::load_relative(&rel_bytes, loaded_ref)?;
    let sample = bundle.sample.as_ref().ok_or("no locate section")?;
    let p = b"GATTA";
    assert_eq!(bundle.index.rel_count(p), ri.rel_count(p));
    assert_eq!(
        rel_locate(&bundle.index, sample, bundle.index.find(p))?,
        rel_locate(&ri, &rs, ri.find(p))?
    );

    let stranger = Arc::new(FmIndex::build(&t2, 32));
    let err = container::load_relative(&rel_bytes, stranger).err().ok_or("loaded against the wrong reference")?;
    println!("wrong reference: {err}");

    let mut damaged = rel_bytes.clone();
    damaged[rel_bytes.len() / 2] ^= 0x10;
    assert!(container::open(&damaged).is_err());

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
