use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::{CliError, Command, FaultArg, Mode, PartitionArgs, QueryArgs, QueryKind};
use crate::bwtinv::{self, rel_locate, InvarianceChecker, RelativeSample};
use crate::container::{self, IndexKind, RelativeBundle};
use crate::fmindex::FmIndex;
use crate::lcsalign::{bw_distance, partitioned_bwt_lcs};
use crate::relcount::RelativeIndex;
use crate::synth;
use crate::textcore::{load_text, load_text_pair, load_text_with, AlphabetKind, Format, Text};
use crate::verify::{self, Fault, VerifyOptions};

type CliResult<T> = std::result::Result<T, CliError>;

/// Ordered `key=value` lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StatsReport {
    entries: Vec<(String, String)>,
}

impl StatsReport {
    pub fn push(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.0 == key).map(|e| e.1.as_str())
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn millis(start: Instant) -> String {
    format!("{:.1}", start.elapsed().as_secs_f64() * 1000.0)
}

fn ratio(a: usize, b: usize) -> String {
    if b == 0 {
        "nan".into()
    } else {
        format!("{:.4}", a as f64 / b as f64)
    }
}

fn format_of(fasta: bool) -> Format {
    if fasta {
        Format::Fasta
    } else {
        Format::Plain
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| {
        CliError::Input(crate::Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        )))
    })
}

fn load_reference(path: &Path) -> CliResult<Arc<FmIndex>> {
    let bytes = read(path)?;
    let (_, meta) = container::open(&bytes)?;
    if meta.kind != IndexKind::Standalone {
        return Err(CliError::Usage(format!(
            "{} is not a standalone index",
            path.display()
        )));
    }
    Ok(Arc::new(container::load_index(&bytes)?))
}

pub(super) fn run(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Build {
            input,
            out: dest,
            rate,
            fasta,
        } => build(&input, &dest, rate, fasta, out),
        Command::BuildRelative {
            reference,
            target,
            out: dest,
            mode,
            partition,
            walk_cap,
        } => build_relative(&reference, &target, &dest, mode, partition, walk_cap, out),
        Command::Query { kind } => match kind {
            QueryKind::Count(args) => query(&args, false, out),
            QueryKind::Locate(args) => query(&args, true, out),
        },
        Command::Stats { index, reference } => stats(&index, reference.as_deref(), out),
        Command::Verify {
            reference,
            target,
            n,
            seeds,
            fasta,
            inject_fault,
        } => verify_cmd(reference.as_deref(), target.as_deref(), n, seeds, fasta, inject_fault, out),
        Command::Bench {
            n,
            mutation,
            indels,
            seed,
            patterns,
            pattern_len,
            rate,
            partition,
        } => bench(n, mutation, indels, seed, patterns, pattern_len, rate, partition, out),
    }
}

fn emit(out: &mut dyn Write, report: &StatsReport) -> CliResult<()> {
    out.write_all(report.render().as_bytes())?;
    Ok(())
}

fn build(input: &Path, dest: &Path, rate: usize, fasta: bool, out: &mut dyn Write) -> CliResult<()> {
    if rate == 0 {
        return Err(CliError::Usage("--rate must be positive".into()));
    }
    let start = Instant::now();
    let text = load_text(&read(input)?, format_of(fasta))?;
    let ix = FmIndex::build(&text, rate);
    let bytes = container::save_index(&ix);
    container::write_file(dest, &bytes)?;
    let mut r = StatsReport::default();
    r.push("kind", "standalone");
    r.push("n", ix.len());
    r.push("sigma", ix.alphabet().sigma());
    r.push("rate", rate);
    r.push("fmi_bytes", ix.payload_bytes());
    r.push("container_bytes", bytes.len());
    r.push("build_ms", millis(start));
    emit(out, &r)
}

fn target_format(ix: &FmIndex) -> Format {
    match ix.alphabet().kind() {
        AlphabetKind::Dna => Format::Fasta,
        AlphabetKind::Bytes => Format::Plain,
    }
}

fn build_relative(
    reference: &Path,
    target: &Path,
    dest: &Path,
    mode: Mode,
    partition: PartitionArgs,
    walk_cap: Option<usize>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let spec = partition.spec();
    spec.validate()?;
    let start = Instant::now();
    let ix1 = load_reference(reference)?;
    let t2 = load_text_with(&read(target)?, target_format(&ix1), ix1.alphabet())?;
    let ix2 = FmIndex::build(&t2, ix1.sample().rate());
    let bwt2 = ix2.bwt().to_vec();
    let lcs = partitioned_bwt_lcs(&ix1, &ix2, &spec)?;

    let mut r = StatsReport::default();
    let (ri, sample) = match mode {
        Mode::Lcs => (RelativeIndex::build(ix1.clone(), &bwt2, &lcs)?, None),
        Mode::Invariant => {
            let t1 = ix1.text();
            let g = bwtinv::invariant_subsequence(&t1, &t2)?;
            let al = InvarianceChecker::new(&t1, &t2).bwt_alignment(&g)?;
            let ri = RelativeIndex::build(ix1.clone(), &bwt2, &al)?;
            let rs = match walk_cap {
                Some(cap) => RelativeSample::with_walk_cap(&g, &ri, cap)?,
                None => RelativeSample::new(&g, ix1.rows(), ri.rows()),
            };
            r.push("g_len", g.len());
            r.push("g_over_lcs", ratio(g.len(), lcs.len()));
            r.push("escapes", rs.escapes().len());
            (ri, Some(rs))
        }
    };
    let bytes = container::save_relative(&ri, sample.as_ref());
    container::write_file(dest, &bytes)?;

    r.push("kind", "relative");
    r.push("mode", if mode == Mode::Lcs { "lcs" } else { "invariant" });
    r.push("n1", ix1.len());
    r.push("n2", ri.len());
    r.push("lcs_len", lcs.len());
    r.push("ell", ri.common_len());
    r.push("bwd", ix1.rows() + ri.rows() - 2 * ri.common_len());
    r.push("rfm_bytes", ri.payload_bytes());
    if let Some(rs) = &sample {
        r.push("inv_bytes", rs.payload_bytes());
    }
    r.push("standalone_fmi_bytes", ix2.payload_bytes());
    r.push("size_ratio", ratio(ri.payload_bytes(), ix2.payload_bytes()));
    r.push("container_bytes", bytes.len());
    r.push("build_ms", millis(start));
    emit(out, &r)
}

enum Engine {
    Standalone(FmIndex),
    Relative(RelativeBundle),
}

impl Engine {
    fn open(index: &Path, reference: Option<&Path>) -> CliResult<Engine> {
        let bytes = read(index)?;
        let (_, meta) = container::open(&bytes)?;
        match meta.kind {
            IndexKind::Standalone => Ok(Engine::Standalone(container::load_index(&bytes)?)),
            IndexKind::Relative => {
                let Some(reference) = reference else {
                    return Err(CliError::Usage(
                        "relative index needs --ref <reference container>".into(),
                    ));
                };
                let ix1 = load_reference(reference)?;
                Ok(Engine::Relative(container::load_relative(&bytes, ix1)?))
            }
        }
    }

    fn count(&self, p: &[u8]) -> usize {
        match self {
            Engine::Standalone(ix) => ix.count(p),
            Engine::Relative(b) => b.index.rel_count(p),
        }
    }

    fn locate(&self, p: &[u8]) -> crate::Result<Vec<usize>> {
        match self {
            Engine::Standalone(ix) => Ok(ix.locate(ix.find(p))),
            Engine::Relative(b) => {
                let rs = b.sample.as_ref().expect("checked before querying");
                rel_locate(&b.index, rs, b.index.find(p))
            }
        }
    }
}

fn query(args: &QueryArgs, locate: bool, out: &mut dyn Write) -> CliResult<()> {
    let engine = Engine::open(&args.index, args.reference.as_deref())?;
    if let (true, Engine::Relative(b)) = (locate, &engine) {
        if b.sample.is_none() {
            return Err(CliError::Usage(
                "index has no locate support; rebuild with --mode invariant".into(),
            ));
        }
    }
    let raw = read(&args.patterns)?;
    let body = raw.strip_suffix(b"\n").unwrap_or(&raw);
    let lines: Vec<&[u8]> = if raw.is_empty() {
        Vec::new()
    } else {
        body.split(|&b| b == b'\n')
            .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
            .collect()
    };
    let answers: Vec<crate::Result<String>> = lines
        .par_iter()
        .map(|p| {
            if p.is_empty() {
                return Ok(if locate { String::new() } else { "0".into() });
            }
            if locate {
                let pos = engine.locate(p)?;
                Ok(pos.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            } else {
                Ok(engine.count(p).to_string())
            }
        })
        .collect();
    for (k, p) in lines.iter().enumerate() {
        if p.is_empty() {
            eprintln!("relfm: line {}: empty pattern", k + 1);
        }
    }
    let mut buf = String::new();
    for a in answers {
        buf.push_str(&a?);
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

fn stats(index: &Path, reference: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let bytes = read(index)?;
    let (c, meta) = container::open(&bytes)?;
    let mut r = StatsReport::default();
    r.push(
        "kind",
        match meta.kind {
            IndexKind::Standalone => "standalone",
            IndexKind::Relative => "relative",
        },
    );
    r.push("sigma", meta.alphabet.sigma());
    r.push("n1", meta.n1);
    if meta.kind == IndexKind::Relative {
        r.push("n2", meta.n2);
    }
    for (tag, len) in c.sizes() {
        r.push(&format!("section_{}_bytes", container::tag_name(tag)), len);
    }
    r.push("container_bytes", bytes.len());
    if meta.kind == IndexKind::Standalone {
        let ix = container::load_index(&bytes)?;
        r.push("rate", ix.sample().rate());
    } else if let Some(reference) = reference {
        let b = container::load_relative(&bytes, load_reference(reference)?)?;
        let ri = &b.index;
        r.push("ell", ri.common_len());
        r.push("b1_ones", ri.b1().count_ones());
        r.push("b2_ones", ri.b2().count_ones());
        r.push("differing_symbols", ri.count_delta().symbols().len());
        r.push("locate", b.sample.is_some());
    }
    emit(out, &r)
}

fn verify_cmd(
    reference: Option<&Path>,
    target: Option<&Path>,
    n: usize,
    seeds: u64,
    fasta: bool,
    fault: Option<FaultArg>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let pair = match (reference, target) {
        (Some(a), Some(b)) => Some(load_text_pair(&read(a)?, &read(b)?, format_of(fasta))?),
        (None, None) => None,
        _ => return Err(CliError::Usage("verify takes both a reference and a target, or neither".into())),
    };
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let report = verify::run_verify(&VerifyOptions {
        n,
        seeds,
        fault: fault.map(|FaultArg::RelRank| Fault::RelRankOffByOne),
        pair,
    })?;
    out.write_all(report.render().as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

#[allow(clippy::too_many_arguments)]
fn bench(
    n: usize,
    mutation: f64,
    indels: f64,
    seed: u64,
    patterns: usize,
    pattern_len: usize,
    rate: usize,
    partition: PartitionArgs,
    out: &mut dyn Write,
) -> CliResult<()> {
    if n == 0 || rate == 0 || pattern_len == 0 {
        return Err(CliError::Usage("--n, --rate and --pattern-len must be positive".into()));
    }
    let spec = partition.spec();
    spec.validate()?;
    let dna = crate::Alphabet::dna();
    let s1 = synth::random_dna(n, seed);
    let s2 = synth::mutate(&s1, mutation, indels, seed);
    let t1 = Text::encode(&s1, &dna)?;
    let t2 = Text::encode(&s2, &dna)?;

    let start = Instant::now();
    let ix1 = Arc::new(FmIndex::build(&t1, rate));
    let ix2 = FmIndex::build(&t2, rate);
    let standalone_ms = millis(start);
    let start = Instant::now();
    let al = partitioned_bwt_lcs(&ix1, &ix2, &spec)?;
    let ri = RelativeIndex::build(ix1.clone(), &ix2.bwt().to_vec(), &al)?;
    let relative_ms = millis(start);

    let mut rng = synth::rng(seed.wrapping_add(1));
    let reads: Vec<Vec<u8>> = (0..patterns)
        .map(|_| synth::sample_pattern(&s2, pattern_len, pattern_len, &mut rng))
        .collect();
    let start = Instant::now();
    let hits_standalone: usize = reads.iter().map(|p| ix2.count(p)).sum();
    let q_standalone = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let hits_relative: usize = reads.iter().map(|p| ri.rel_count(p)).sum();
    let q_relative = start.elapsed().as_secs_f64();
    if hits_standalone != hits_relative {
        return Err(CliError::VerifyFailed);
    }

    let mut r = StatsReport::default();
    r.push("n1", ix1.len());
    r.push("n2", ix2.len());
    r.push("mutation", mutation);
    r.push("indels", indels);
    r.push("lcs_len", al.len());
    r.push("bwd", bw_distance(ix1.len(), ix2.len(), &al)?);
    r.push("standalone_fmi_bytes", ix2.payload_bytes());
    r.push("relative_rfm_bytes", ri.payload_bytes());
    r.push("size_pct", format!("{:.1}", 100.0 * ri.payload_bytes() as f64 / ix2.payload_bytes() as f64));
    r.push("standalone_build_ms", standalone_ms);
    r.push("relative_build_ms", relative_ms);
    r.push("patterns", patterns);
    r.push("hits", hits_relative);
    r.push("query_standalone_ms", format!("{:.1}", q_standalone * 1000.0));
    r.push("query_relative_ms", format!("{:.1}", q_relative * 1000.0));
    r.push("query_time_pct", format!("{:.0}", 100.0 * q_relative / q_standalone.max(1e-9)));
    emit(out, &r)
}
