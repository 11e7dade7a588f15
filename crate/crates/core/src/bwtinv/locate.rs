use rayon::prelude::*;

use super::InvariantAlignment;
use crate::bytes::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fmindex::SuffixRange;
use crate::relcount::RelativeIndex;
use crate::succinct::BitArray;
use crate::textcore::SENTINEL;

/// What a relative index needs, beyond the reference sample, to locate in
/// the target: `M1`/`M2` mark text characters outside the invariant
/// subsequence, and escapes store positions for rows whose LF-walk would
/// otherwise exceed the walk cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeSample {
    m1: BitArray,
    m2: BitArray,
    walk_cap: usize,
    /// `(row, suffix start)`, sorted by row.
    escapes: Vec<(usize, usize)>,
}

impl RelativeSample {
    /// No escapes; walks are bounded by the target length.
    pub fn new(g: &InvariantAlignment, rows1: usize, rows2: usize) -> Self {
        RelativeSample {
            m1: g.m1(rows1),
            m2: g.m2(rows2),
            walk_cap: rows2,
            escapes: Vec::new(),
        }
    }

    /// Adds escapes so that no locate walk takes more than `walk_cap` LF
    /// steps. `ri` must be built over the BWT alignment induced by `g`.
    pub fn with_walk_cap(g: &InvariantAlignment, ri: &RelativeIndex, walk_cap: usize) -> Result<Self> {
        let mut rs = RelativeSample::new(g, ri.reference().rows(), ri.rows());
        rs.check_compatible(ri)?;
        if walk_cap >= ri.rows() {
            return Ok(rs);
        }
        // rows_by_start[p - 1] is the target row of the suffix starting at p
        let rows2 = ri.rows();
        let mut rows_by_start = vec![0; rows2];
        let mut row = 1;
        for p in (1..=rows2).rev() {
            rows_by_start[p - 1] = row;
            row = ri.lf_unchecked(row).1;
        }
        let mut last = 1;
        let mut escapes = Vec::new();
        for (p, &row) in rows_by_start.iter().enumerate().map(|(k, r)| (k + 1, r)) {
            if rs.resolve(ri, row).is_some() {
                last = p;
            } else if p - last > walk_cap {
                escapes.push((row, p));
                last = p;
            }
        }
        escapes.sort_unstable();
        rs.escapes = escapes;
        rs.walk_cap = walk_cap;
        Ok(rs)
    }

    pub fn m1(&self) -> &BitArray {
        &self.m1
    }

    pub fn m2(&self) -> &BitArray {
        &self.m2
    }

    pub fn walk_cap(&self) -> usize {
        self.walk_cap
    }

    pub fn escapes(&self) -> &[(usize, usize)] {
        &self.escapes
    }

    fn check_compatible(&self, ri: &RelativeIndex) -> Result<()> {
        if self.m1.len() != ri.reference().rows()
            || self.m2.len() != ri.rows()
            || self.m1.count_zeros() != ri.common_len()
            || self.m2.count_zeros() != ri.common_len()
        {
            return Err(Error::InvalidAlignment(
                "relative sample does not match the relative index".into(),
            ));
        }
        Ok(())
    }

    /// Suffix start of target row `i` when it can be read off the
    /// reference sample directly.
    #[inline]
    fn resolve(&self, ri: &RelativeIndex, i: usize) -> Option<usize> {
        let v = ri.mirrored_row(i)?;
        let sample = ri.reference().sample();
        if !sample.marks().get(v) {
            return None;
        }
        let a = sample.text_position(sample.marks().rank1(v));
        let c1 = if a == 1 { self.m1.len() } else { a - 1 };
        if self.m1.get(c1) {
            return None;
        }
        let j = self.m2.select0(self.m1.rank0(c1));
        Some(if j == self.m2.len() { 1 } else { j + 1 })
    }

    pub(crate) fn write_payload(&self, w: &mut Writer) {
        self.m1.write(w);
        self.m2.write(w);
        w.usize(self.walk_cap);
        w.usize(self.escapes.len());
        for &(row, pos) in &self.escapes {
            w.usize(row);
            w.usize(pos);
        }
    }

    pub(crate) fn read_payload(r: &mut Reader<'_>) -> Result<Self> {
        let m1 = BitArray::read(r)?;
        let m2 = BitArray::read(r)?;
        let walk_cap = r.usize()?;
        let n = r.len_prefix(16)?;
        let escapes = (0..n)
            .map(|_| Ok((r.usize()?, r.usize()?)))
            .collect::<Result<Vec<_>>>()?;
        let rows2 = m2.len();
        let ok = m1.count_zeros() == m2.count_zeros()
            && escapes.windows(2).all(|e| e[0].0 < e[1].0)
            && escapes
                .iter()
                .all(|&(row, pos)| (1..=rows2).contains(&row) && (1..=rows2).contains(&pos));
        if !ok {
            return Err(Error::Corrupt("inconsistent relative sample".into()));
        }
        Ok(RelativeSample {
            m1,
            m2,
            walk_cap,
            escapes,
        })
    }

    pub fn payload_bytes(&self) -> usize {
        self.m1.payload_bytes() + self.m2.payload_bytes() + 16 + 16 * self.escapes.len()
    }
}

/// Suffix start in the target of row `row`, walking LF through the
/// relative index until a row resolves through the reference sample.
pub fn rel_locate_row(ri: &RelativeIndex, rs: &RelativeSample, row: usize) -> Result<usize> {
    rs.check_compatible(ri)?;
    if row == 0 || row > ri.rows() {
        return Err(Error::OutOfRange {
            what: "row",
            index: row,
            limit: ri.rows(),
        });
    }
    Ok(walk(ri, rs, row))
}

#[inline]
fn walk(ri: &RelativeIndex, rs: &RelativeSample, row: usize) -> usize {
    let mut cur = row;
    let mut steps = 0;
    loop {
        if let Some(start) = rs.resolve(ri, cur) {
            return start + steps;
        }
        if !rs.escapes.is_empty() {
            if let Ok(k) = rs.escapes.binary_search_by_key(&cur, |e| e.0) {
                return rs.escapes[k].1 + steps;
            }
        }
        let (a, next) = ri.lf_unchecked(cur);
        if a == SENTINEL {
            return 1 + steps;
        }
        cur = next;
        steps += 1;
    }
}

/// Target text positions of every row in `rg`, ascending.
pub fn rel_locate(ri: &RelativeIndex, rs: &RelativeSample, rg: SuffixRange) -> Result<Vec<usize>> {
    rs.check_compatible(ri)?;
    if rg.is_empty() {
        return Ok(Vec::new());
    }
    if rg.lo == 0 || rg.hi > ri.rows() {
        return Err(Error::OutOfRange {
            what: "row",
            index: rg.hi.max(rg.lo),
            limit: ri.rows(),
        });
    }
    let mut out: Vec<usize> = rg.rows().into_par_iter().map(|row| walk(ri, rs, row)).collect();
    out.sort_unstable();
    Ok(out)
}

/// The sample-reuse expression on explicit structures:
/// `M2.select0(M1.rank0(A[R.rank1(B1.select0(B2.rank0(i)))]))`, defined
/// when row `i` is in the common subsequence and its mirrored reference
/// row is sampled. `a` lists sampled character positions in row order.
pub fn sample_formula(
    b1: &BitArray,
    b2: &BitArray,
    r: &BitArray,
    a: &[usize],
    m1: &BitArray,
    m2: &BitArray,
    i: usize,
) -> Option<usize> {
    if i == 0 || i > b2.len() || b2.get(i) {
        return None;
    }
    let v = b1.select(false, b2.rank0(i)).ok()?;
    if v > r.len() || !r.get(v) {
        return None;
    }
    let c = *a.get(r.rank1(v) - 1)?;
    if c == 0 || c > m1.len() {
        return None;
    }
    m2.select(false, m1.rank0(c)).ok()
}
