//! Doubling ½H(n) to ½H(2n) by splitting a face-covered cell by sign.
//!
//! A vertex of ½H(2n) is a pair `(x, y)` of n-words with `x + y` even. Its
//! label is read off `z = x + y`: vertices over the first cell keep label 0,
//! vertices over the second cell are split by the parity of
//! `wt(x) + wt(y ∧ F)` where `F` is the free mask of the face containing `z`.

use std::collections::HashMap;

use super::{matrix_of, settle};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::graph::{CubeGraph, CubeKind, Face};
use crate::partition::Partition;
use crate::quotient::QuotientMatrix;
use crate::word::{low_mask, BinaryWord};

/// A 2-partition of ½H(n) together with a cover of cell 1 by disjoint faces
/// of a common dimension `s`.
#[derive(Clone, Debug)]
pub struct FacePartition {
    partition: Partition,
    faces: Vec<Face>,
    s: u32,
    mask_of: HashMap<u64, u64>,
}

impl FacePartition {
    pub fn new(partition: Partition, faces: Vec<Face>) -> Result<Self> {
        let g = partition.graph();
        if g.kind() != CubeKind::HalvedEven {
            return Err(Error::Shape(format!("splitting needs a partition of ½H(n), got {g}")));
        }
        if partition.k() > 2 {
            return Err(Error::Shape(format!("expected at most 2 cells, got {}", partition.k())));
        }
        let first = faces.first().ok_or_else(|| Error::FaceCover("no faces given".into()))?;
        let s = first.dimension();
        let mut mask_of = HashMap::new();
        for f in &faces {
            if f.host() != g {
                return Err(Error::GraphMismatch(g.to_string(), f.host().to_string()));
            }
            if f.dimension() != s {
                return Err(Error::FaceCover(format!("faces of dimensions {s} and {}", f.dimension())));
            }
            for v in f.vertices() {
                if partition.label(v)? != partition.k() as u8 - 1 {
                    return Err(Error::FaceCover(format!("{v} lies outside the covered cell")));
                }
                if mask_of.insert(v.bits(), f.free_mask().bits()).is_some() {
                    return Err(Error::FaceCover(format!("{v} lies in two faces")));
                }
            }
        }
        let covered = partition.labels().iter().filter(|&&l| l as usize == partition.k() - 1).count();
        if covered != mask_of.len() {
            return Err(Error::FaceCover(format!("faces cover {} of {covered} vertices", mask_of.len())));
        }
        Ok(FacePartition { partition, faces, s, mask_of })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Common face dimension.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Whether cell 0 is absent (a single-cell partition covered by faces).
    pub fn is_trivial(&self) -> bool {
        self.partition.k() == 1
    }
}

/// Labels over ½H(2n): 0 above cell 0, `1 + sign` above the covered cell.
fn signed_labels(fp: &FacePartition) -> Result<(CubeGraph, Vec<u8>)> {
    let n = fp.partition.graph().n();
    let out = CubeGraph::halved(2 * n);
    let mask = low_mask(n);
    let covered = fp.partition.k() as u8 - 1;
    let p = Partition::from_fn(out, 3, |v| {
        let (x, y) = (v >> n, v & mask);
        let z = x ^ y;
        if fp.partition.label_of_bits(z) != covered {
            return 0;
        }
        let free = fp.mask_of[&z];
        1 + ((x.count_ones() + (y & free).count_ones()) & 1) as u8
    })?;
    Ok((out, p.labels().to_vec()))
}

/// The 3-partition of ½H(2n) obtained by splitting the covered cell.
///
/// With input matrix `[[a, b], [c, d]]` the claim is
/// `[[4a+n, 2b, 2b], [4c, 2d+s², 2d+n−s²], [4c, 2d+n−s², 2d+s²]]`.
pub fn split(fp: &FacePartition) -> Result<Partition> {
    if fp.is_trivial() {
        return Err(Error::DegenerateCell(0));
    }
    let (a, b, c, d) = matrix_of(&fp.partition)?.abcd()?;
    let n = fp.partition.graph().n() as i64;
    let s2 = (fp.s as i64).pow(2);
    let claimed = QuotientMatrix::from_rows(vec![
        vec![4 * a + n, 2 * b, 2 * b],
        vec![4 * c, 2 * d + s2, 2 * d + n - s2],
        vec![4 * c, 2 * d + n - s2, 2 * d + s2],
    ])?;
    let (g, labels) = signed_labels(fp)?;
    settle(Partition::new(g, 3, labels)?, claimed)
}

/// The split with cell 0 merged into the first signed cell, a 2-partition
/// of ½H(2n).
///
/// Equitable when `s² = 2d + n − 2b`; a single-cell input gives the two
/// sign classes with matrix `[[2D+s², 2D+n−s²], [2D+n−s², 2D+s²]]`,
/// `D` the degree of ½H(n).
pub fn split_merged(fp: &FacePartition) -> Result<Partition> {
    let g = fp.partition.graph();
    let n = g.n() as i64;
    let s2 = (fp.s as i64).pow(2);
    let big = CubeGraph::halved(2 * g.n()).degree() as i64;
    let (claimed, merge): (QuotientMatrix, fn(u8) -> u8) = if fp.is_trivial() {
        let d = g.degree() as i64;
        (QuotientMatrix::two(2 * d + s2, 2 * d + n - s2, 2 * d + n - s2, 2 * d + s2), |l| l - 1)
    } else {
        let (_, b, c, d) = matrix_of(&fp.partition)?.abcd()?;
        if s2 != 2 * d + n - 2 * b {
            return Err(Error::MergeCondition { s_squared: s2, rhs: 2 * d + n - 2 * b });
        }
        (QuotientMatrix::two(big - 2 * b, 2 * b, 4 * c + 2 * d + n - s2, 2 * d + s2), |l| u8::from(l == 2))
    };
    let (out, labels) = signed_labels(fp)?;
    settle(Partition::new(out, 2, labels.into_iter().map(merge).collect())?, claimed)
}

fn w6(bits: u64) -> BinaryWord {
    BinaryWord::from_raw(bits, 6)
}

/// The `c`-th member (`0 ≤ c ≤ 14`) of a family of face-covered partitions
/// of ½H(6) with matrix `[[c−1, 16−c], [c, 15−c]]` (single cell for
/// `c = 0`), each cover made of edges.
///
/// The merged split of member `c` is `[[34+2c, 32−2c], [32+2c, 34−2c]]` on
/// ½H(12).
pub fn build_n6_split_family(c: u32) -> Result<FacePartition> {
    if c > 14 {
        return Err(Error::Index { index: c as usize, max: 14 });
    }
    let g = CubeGraph::halved(6);
    let v = LinearCode::span(6, &[w6(0b111111), w6(0b000011)])?;
    let reps = v.coset_representatives(true)?;
    let pair_edges = |r: u64| {
        [Face::through(w6(r), w6(0b000011), g), Face::through(w6(r ^ 0b111111), w6(0b000011), g)]
    };
    let mut faces = Vec::new();
    let mut covered: Vec<u64> = Vec::new();
    if c.is_multiple_of(2) {
        for r in &reps[(c / 2) as usize..] {
            covered.extend(v.coset(*r).iter().map(|x| x.bits()));
            faces.extend(pair_edges(r.bits()));
        }
    } else {
        let six = [0b000011, 0b111100, 0b001100, 0b110011, 0b110000, 0b001111];
        covered.extend(six);
        for (anchor, mask) in [(0b000011, 0b001100), (0b001100, 0b110000), (0b110000, 0b000011)] {
            faces.push(Ok(Face::through(w6(anchor), w6(mask), g)?));
        }
        let free: Vec<_> = reps.iter().filter(|r| v.coset(**r).iter().all(|x| !six.contains(&x.bits()))).collect();
        for r in &free[..((13 - c) / 2) as usize] {
            covered.extend(v.coset(**r).iter().map(|x| x.bits()));
            faces.extend(pair_edges(r.bits()));
        }
    }
    let faces = faces.into_iter().collect::<Result<Vec<_>>>()?;
    let p = if c == 0 {
        Partition::single_cell(g)?
    } else {
        let p = Partition::from_fn(g, 2, |b| u8::from(covered.contains(&b)))?;
        settle(p, QuotientMatrix::two(c as i64 - 1, 16 - c as i64, c as i64, 15 - c as i64))?
    };
    FacePartition::new(p, faces)
}
