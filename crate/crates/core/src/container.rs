//! Versioned binary container for standalone and relative indexes.
//!
//! ```text
//! "RFMX" | version u32 | section count u32
//! count x (tag [4], offset u64, length u64)
//! section payloads
//! digest u64 of everything above
//! ```
//!
//! Integers are little-endian. Sections: `FMI1` (FM-index), `RFM1`
//! (relative counting structures), `INV1` (relative sample), `META`
//! (alphabet, lengths and per-section digests). Unknown sections are
//! skipped on load.

use std::path::Path;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::bwtinv::RelativeSample;
use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fmindex::FmIndex;
use crate::relcount::RelativeIndex;
use crate::textcore::Alphabet;

pub const MAGIC: &[u8; 4] = b"RFMX";
pub const VERSION: u32 = 1;

pub const TAG_FMI: [u8; 4] = *b"FMI1";
pub const TAG_RFM: [u8; 4] = *b"RFM1";
pub const TAG_INV: [u8; 4] = *b"INV1";
pub const TAG_META: [u8; 4] = *b"META";

const HEADER: usize = 12;
const ENTRY: usize = 20;

/// First eight bytes of SHA-256, little-endian.
pub fn digest(bytes: &[u8]) -> u64 {
    let h = Sha256::digest(bytes);
    u64::from_le_bytes(h[..8].try_into().unwrap())
}

/// Raw tagged sections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Container {
    sections: Vec<([u8; 4], Vec<u8>)>,
}

impl Container {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, tag: [u8; 4], payload: Vec<u8>) {
        self.sections.push((tag, payload));
    }

    pub fn section(&self, tag: [u8; 4]) -> Option<&[u8]> {
        self.sections.iter().find(|s| s.0 == tag).map(|s| s.1.as_slice())
    }

    pub fn tags(&self) -> impl Iterator<Item = [u8; 4]> + '_ {
        self.sections.iter().map(|s| s.0)
    }

    /// `(tag, payload length)` of every section.
    pub fn sizes(&self) -> Vec<([u8; 4], usize)> {
        self.sections.iter().map(|s| (s.0, s.1.len())).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.sections.len() as u32).to_le_bytes());
        let mut offset = (HEADER + ENTRY * self.sections.len()) as u64;
        for (tag, payload) in &self.sections {
            out.extend_from_slice(tag);
            out.extend_from_slice(&offset.to_le_bytes());
            out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
            offset += payload.len() as u64;
        }
        for (_, payload) in &self.sections {
            out.extend_from_slice(payload);
        }
        let d = digest(&out);
        out.extend_from_slice(&d.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let corrupt = |m: &str| Err(Error::Corrupt(m.into()));
        if bytes.len() < HEADER + 8 {
            return corrupt("file too short");
        }
        if &bytes[..4] != MAGIC {
            return corrupt("bad magic");
        }
        let (body, tail) = bytes.split_at(bytes.len() - 8);
        if digest(body) != u64::from_le_bytes(tail.try_into().unwrap()) {
            return corrupt("digest mismatch");
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != VERSION {
            return Err(Error::Corrupt(format!("unsupported version {version}")));
        }
        let count = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
        let table_end = count
            .checked_mul(ENTRY)
            .and_then(|t| t.checked_add(HEADER))
            .filter(|&e| e <= body.len());
        let Some(table_end) = table_end else {
            return corrupt("section table exceeds file");
        };
        let mut entries = Vec::with_capacity(count);
        for k in 0..count {
            let e = &bytes[HEADER + k * ENTRY..HEADER + (k + 1) * ENTRY];
            let tag: [u8; 4] = e[..4].try_into().unwrap();
            let offset = u64::from_le_bytes(e[4..12].try_into().unwrap());
            let len = u64::from_le_bytes(e[12..20].try_into().unwrap());
            let end = offset.checked_add(len);
            match end {
                Some(end) if offset >= table_end as u64 && end <= body.len() as u64 => {
                    entries.push((tag, offset as usize, end as usize))
                }
                _ => return corrupt("section outside payload area"),
            }
        }
        let mut spans: Vec<(usize, usize)> = entries.iter().map(|e| (e.1, e.2)).collect();
        spans.sort_unstable();
        if spans.windows(2).any(|w| w[0].1 > w[1].0) {
            return corrupt("overlapping sections");
        }
        let sections = entries
            .into_iter()
            .map(|(tag, lo, hi)| (tag, bytes[lo..hi].to_vec()))
            .collect();
        Ok(Container { sections })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Standalone,
    Relative,
}

/// Summary kept in the `META` section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub kind: IndexKind,
    pub alphabet: Alphabet,
    pub n1: usize,
    /// Target length; 0 for a standalone index.
    pub n2: usize,
    pub digests: Vec<([u8; 4], u64)>,
}

impl Meta {
    fn encode(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.u64(match self.kind {
            IndexKind::Standalone => 0,
            IndexKind::Relative => 1,
        });
        self.alphabet.write(&mut w);
        w.usize(self.n1);
        w.usize(self.n2);
        w.usize(self.digests.len());
        for (tag, d) in &self.digests {
            w.bytes(tag);
            w.u64(*d);
        }
        w.finish()
    }

    fn decode(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let kind = match r.u64()? {
            0 => IndexKind::Standalone,
            1 => IndexKind::Relative,
            k => return Err(Error::Corrupt(format!("unknown index kind {k}"))),
        };
        let alphabet = Alphabet::read(&mut r)?;
        let n1 = r.usize()?;
        let n2 = r.usize()?;
        let count = r.len_prefix(12)?;
        let mut digests = Vec::with_capacity(count);
        for _ in 0..count {
            let tag: [u8; 4] = r.take(4)?.try_into().unwrap();
            digests.push((tag, r.u64()?));
        }
        r.expect_end()?;
        Ok(Meta {
            kind,
            alphabet,
            n1,
            n2,
            digests,
        })
    }
}

fn fmi_payload(ix: &FmIndex) -> Vec<u8> {
    let mut w = Writer::new();
    ix.write_payload(&mut w);
    w.finish()
}

/// Digest identifying a reference index; relative containers record it.
pub fn reference_digest(ix: &FmIndex) -> u64 {
    digest(&fmi_payload(ix))
}

fn finish(kind: IndexKind, alphabet: &Alphabet, n1: usize, n2: usize, sections: Vec<([u8; 4], Vec<u8>)>) -> Vec<u8> {
    let meta = Meta {
        kind,
        alphabet: alphabet.clone(),
        n1,
        n2,
        digests: sections.iter().map(|(t, p)| (*t, digest(p))).collect(),
    };
    let mut c = Container::new();
    c.push(TAG_META, meta.encode());
    for (tag, payload) in sections {
        c.push(tag, payload);
    }
    c.to_bytes()
}

/// Parses the container and checks the per-section digests listed in META.
pub fn open(bytes: &[u8]) -> Result<(Container, Meta)> {
    let c = Container::from_bytes(bytes)?;
    let meta = Meta::decode(c.section(TAG_META).ok_or_else(|| Error::Corrupt("missing META".into()))?)?;
    for (tag, d) in &meta.digests {
        match c.section(*tag) {
            Some(p) if digest(p) == *d => {}
            Some(_) => return Err(Error::Corrupt(format!("digest mismatch in {}", tag_name(*tag)))),
            None => return Err(Error::Corrupt(format!("missing section {}", tag_name(*tag)))),
        }
    }
    Ok((c, meta))
}

pub fn tag_name(tag: [u8; 4]) -> String {
    String::from_utf8_lossy(&tag).into_owned()
}

pub fn save_index(ix: &FmIndex) -> Vec<u8> {
    finish(IndexKind::Standalone, ix.alphabet(), ix.len(), 0, vec![(TAG_FMI, fmi_payload(ix))])
}

pub fn load_index(bytes: &[u8]) -> Result<FmIndex> {
    let (c, meta) = open(bytes)?;
    if meta.kind != IndexKind::Standalone {
        return Err(Error::Corrupt("not a standalone index".into()));
    }
    let payload = c.section(TAG_FMI).ok_or_else(|| Error::Corrupt("missing FMI1".into()))?;
    let mut r = Reader::new(payload);
    let ix = FmIndex::read_payload(&mut r, meta.alphabet)?;
    r.expect_end()?;
    if ix.len() != meta.n1 {
        return Err(Error::Corrupt("length disagrees with META".into()));
    }
    Ok(ix)
}

/// A loaded relative index plus its locating sample, if present.
#[derive(Clone, Debug)]
pub struct RelativeBundle {
    pub index: RelativeIndex,
    pub sample: Option<RelativeSample>,
}

pub fn save_relative(ri: &RelativeIndex, sample: Option<&RelativeSample>) -> Vec<u8> {
    let ref_digest = reference_digest(ri.reference());
    let mut w = Writer::new();
    w.u64(ref_digest);
    ri.write_payload(&mut w);
    let mut sections = vec![(TAG_RFM, w.finish())];
    if let Some(rs) = sample {
        let mut w = Writer::new();
        w.u64(ref_digest);
        rs.write_payload(&mut w);
        sections.push((TAG_INV, w.finish()));
    }
    finish(
        IndexKind::Relative,
        ri.reference().alphabet(),
        ri.reference().len(),
        ri.len(),
        sections,
    )
}

pub fn load_relative(bytes: &[u8], reference: Arc<FmIndex>) -> Result<RelativeBundle> {
    let (c, meta) = open(bytes)?;
    if meta.kind != IndexKind::Relative {
        return Err(Error::Corrupt("not a relative index".into()));
    }
    let ref_digest = reference_digest(&reference);
    if meta.alphabet != *reference.alphabet() || meta.n1 != reference.len() {
        return Err(Error::ReferenceMismatch);
    }
    let payload = c.section(TAG_RFM).ok_or_else(|| Error::Corrupt("missing RFM1".into()))?;
    let mut r = Reader::new(payload);
    if r.u64()? != ref_digest {
        return Err(Error::ReferenceMismatch);
    }
    let index = RelativeIndex::read_payload(&mut r, reference)?;
    r.expect_end()?;
    if index.len() != meta.n2 {
        return Err(Error::Corrupt("length disagrees with META".into()));
    }
    let sample = match c.section(TAG_INV) {
        None => None,
        Some(payload) => {
            let mut r = Reader::new(payload);
            if r.u64()? != ref_digest {
                return Err(Error::ReferenceMismatch);
            }
            let rs = RelativeSample::read_payload(&mut r)?;
            r.expect_end()?;
            if rs.m1().len() != index.reference().rows()
                || rs.m2().len() != index.rows()
                || rs.m2().count_zeros() != index.common_len()
            {
                return Err(Error::Corrupt("relative sample does not match RFM1".into()));
            }
            Some(rs)
        }
    };
    Ok(RelativeBundle { index, sample })
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    Ok(std::fs::read(path)?)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    Ok(std::fs::write(path, bytes)?)
}
