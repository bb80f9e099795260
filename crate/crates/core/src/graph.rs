//! Implicit hypercube and halved-cube graphs.
//!
//! Vertices are never materialized unless a caller asks for an
//! [`AdjacencyTable`]. Ordinals rank a graph's vertices by integer value
//! within the parity class, so for halved cubes the ordinal is simply
//! `bits >> 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{low_mask, parity, BinaryWord};

/// Largest `n` for which an adjacency table may be built.
pub const MAX_TABLE_N: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubeKind {
    Full,
    HalvedEven,
    HalvedOdd,
}

impl CubeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CubeKind::Full => "full",
            CubeKind::HalvedEven => "halved-even",
            CubeKind::HalvedOdd => "halved-odd",
        }
    }

    pub fn is_halved(self) -> bool {
        !matches!(self, CubeKind::Full)
    }

    pub fn halved_with_parity(p: u32) -> CubeKind {
        if p & 1 == 0 {
            CubeKind::HalvedEven
        } else {
            CubeKind::HalvedOdd
        }
    }

    fn class_parity(self) -> Option<u32> {
        match self {
            CubeKind::Full => None,
            CubeKind::HalvedEven => Some(0),
            CubeKind::HalvedOdd => Some(1),
        }
    }
}

impl FromStr for CubeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "cube" => Ok(CubeKind::Full),
            "halved-even" | "halved" => Ok(CubeKind::HalvedEven),
            "halved-odd" => Ok(CubeKind::HalvedOdd),
            _ => Err(Error::Parse(format!("unknown graph kind {s:?}"))),
        }
    }
}

impl fmt::Display for CubeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// H(n), ½H(n) on even words, or ½H(n)' on odd words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeGraph {
    kind: CubeKind,
    n: u32,
}

impl CubeGraph {
    pub fn new(kind: CubeKind, n: u32) -> Result<Self> {
        let max = if kind == CubeKind::Full { 63 } else { 64 };
        if n == 0 || n > max {
            return Err(Error::Shape(format!("{kind} cube needs 1 <= n <= {max}, got {n}")));
        }
        Ok(CubeGraph { kind, n })
    }

    pub fn full(n: u32) -> Self {
        CubeGraph::new(CubeKind::Full, n).expect("valid cube length")
    }

    pub fn halved(n: u32) -> Self {
        CubeGraph::new(CubeKind::HalvedEven, n).expect("valid cube length")
    }

    pub fn halved_odd(n: u32) -> Self {
        CubeGraph::new(CubeKind::HalvedOdd, n).expect("valid cube length")
    }

    #[inline]
    pub fn kind(self) -> CubeKind {
        self.kind
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    pub fn vertex_count(self) -> u64 {
        match self.kind {
            CubeKind::Full => 1u64 << self.n,
            _ => 1u64 << (self.n - 1),
        }
    }

    pub fn degree(self) -> u64 {
        let n = self.n as u64;
        match self.kind {
            CubeKind::Full => n,
            _ => n * (n - 1) / 2,
        }
    }

    pub fn diameter(self) -> u32 {
        match self.kind {
            CubeKind::Full => self.n,
            _ => self.n / 2,
        }
    }

    /// Hamming distance between adjacent vertices.
    #[inline]
    pub fn step(self) -> u32 {
        if self.kind.is_halved() {
            2
        } else {
            1
        }
    }

    #[inline]
    pub fn contains_bits(self, bits: u64) -> bool {
        if bits & !low_mask(self.n) != 0 {
            return false;
        }
        match self.kind.class_parity() {
            None => true,
            Some(p) => parity(bits) == p,
        }
    }

    pub fn contains(self, w: BinaryWord) -> bool {
        w.len() == self.n && self.contains_bits(w.bits())
    }

    pub(crate) fn check_vertex(self, w: BinaryWord) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::Shape(format!("word {w} has length {}, graph {self} needs {}", w.len(), self.n)));
        }
        if !self.contains_bits(w.bits()) {
            return Err(Error::Parity { word: w.to_string(), graph: self.to_string() });
        }
        Ok(())
    }

    /// Ordinal of a known vertex, no checks.
    #[inline]
    pub fn ordinal_of(self, bits: u64) -> usize {
        match self.kind {
            CubeKind::Full => bits as usize,
            _ => (bits >> 1) as usize,
        }
    }

    /// Vertex bits at a known-valid ordinal, no checks.
    #[inline]
    pub fn bits_at(self, ordinal: usize) -> u64 {
        let m = ordinal as u64;
        match self.kind.class_parity() {
            None => m,
            Some(p) => (m << 1) | u64::from(parity(m) ^ p),
        }
    }

    pub fn vertex_index(self, w: BinaryWord) -> Result<u64> {
        self.check_vertex(w)?;
        Ok(self.ordinal_of(w.bits()) as u64)
    }

    pub fn vertex(self, ordinal: u64) -> Result<BinaryWord> {
        if ordinal >= self.vertex_count() {
            return Err(Error::Index { index: ordinal as usize, max: (self.vertex_count() - 1) as usize });
        }
        Ok(BinaryWord::from_raw(self.bits_at(ordinal as usize), self.n))
    }

    /// Iterator over vertex bits in ordinal order.
    pub fn vertex_bits(self) -> impl Iterator<Item = u64> {
        (0..self.vertex_count() as usize).map(move |o| self.bits_at(o))
    }

    /// Calls `f` with the bits of every neighbor of `bits`.
    #[inline]
    pub fn for_each_neighbor(self, bits: u64, mut f: impl FnMut(u64)) {
        let n = self.n;
        if self.kind.is_halved() {
            for i in 0..n {
                for j in (i + 1)..n {
                    f(bits ^ (1u64 << i) ^ (1u64 << j));
                }
            }
        } else {
            for i in 0..n {
                f(bits ^ (1u64 << i));
            }
        }
    }

    pub fn neighbors(self, w: BinaryWord) -> Result<Vec<BinaryWord>> {
        self.check_vertex(w)?;
        let mut out = Vec::with_capacity(self.degree() as usize);
        self.for_each_neighbor(w.bits(), |b| out.push(BinaryWord::from_raw(b, self.n)));
        out.sort_unstable();
        Ok(out)
    }

    /// Graph distance between two vertices.
    pub fn distance(self, u: BinaryWord, v: BinaryWord) -> u32 {
        u.distance(v) / self.step()
    }

    /// All vertices at graph distance exactly `d` from `w`, ascending.
    pub fn sphere(self, w: BinaryWord, d: u32) -> Result<Vec<BinaryWord>> {
        self.check_vertex(w)?;
        if d > self.diameter() {
            return Err(Error::Index { index: d as usize, max: self.diameter() as usize });
        }
        let mut out: Vec<BinaryWord> = masks_of_weight(self.n, d * self.step())
            .map(|m| BinaryWord::from_raw(w.bits() ^ m, self.n))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Cached neighbor ordinals, available for `n <= 16`.
    pub fn adjacency_table(self) -> Result<AdjacencyTable> {
        if self.n > MAX_TABLE_N {
            return Err(Error::Shape(format!("adjacency table only for n <= {MAX_TABLE_N}")));
        }
        let deg = self.degree() as usize;
        let v = self.vertex_count() as usize;
        let mut nbrs = Vec::with_capacity(v * deg);
        for o in 0..v {
            let bits = self.bits_at(o);
            self.for_each_neighbor(bits, |b| nbrs.push(self.ordinal_of(b) as u32));
        }
        Ok(AdjacencyTable { degree: deg, nbrs })
    }
}

impl fmt::Display for CubeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CubeKind::Full => write!(f, "H({})", self.n),
            CubeKind::HalvedEven => write!(f, "1/2H({})", self.n),
            CubeKind::HalvedOdd => write!(f, "1/2H({})'", self.n),
        }
    }
}

/// Flat `vertex_count x degree` table of neighbor ordinals.
#[derive(Clone, Debug)]
pub struct AdjacencyTable {
    degree: usize,
    nbrs: Vec<u32>,
}

impl AdjacencyTable {
    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn neighbors(&self, ordinal: usize) -> &[u32] {
        &self.nbrs[ordinal * self.degree..(ordinal + 1) * self.degree]
    }

    pub fn vertex_count(&self) -> usize {
        self.nbrs.len().checked_div(self.degree).unwrap_or(0)
    }
}

/// All `n`-bit masks of weight `w` in increasing order (Gosper's hack).
pub fn masks_of_weight(n: u32, w: u32) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let first = if w > n {
        None
    } else if w == 0 {
        Some(0)
    } else {
        Some(low_mask(w))
    };
    std::iter::successors(first, move |&m| {
        if m == 0 {
            return None;
        }
        let c = m & m.wrapping_neg();
        let r = m.checked_add(c)?;
        let next = (((r ^ m) >> 2) / c) | r;
        if n < 64 && next >= limit {
            None
        } else {
            Some(next)
        }
    })
}

/// An s-face: words agreeing with `anchor` off the free coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    free_mask: BinaryWord,
    anchor: BinaryWord,
    host: CubeGraph,
}

impl Face {
    pub fn new(free_mask: BinaryWord, anchor: BinaryWord, host: CubeGraph) -> Result<Self> {
        if free_mask.len() != host.n() || anchor.len() != host.n() {
            return Err(Error::Shape("face words must have the host's length".into()));
        }
        if free_mask.bits() & anchor.bits() != 0 {
            return Err(Error::MalformedFace { free_mask: free_mask.bits(), anchor: anchor.bits() });
        }
        Ok(Face { free_mask, anchor, host })
    }

    /// The face of `host` with free coordinates `free_mask` through vertex `v`.
    pub fn through(v: BinaryWord, free_mask: BinaryWord, host: CubeGraph) -> Result<Self> {
        let anchor = BinaryWord::from_raw(v.bits() & !free_mask.bits(), v.len());
        Face::new(free_mask, anchor, host)
    }

    pub fn free_mask(&self) -> BinaryWord {
        self.free_mask
    }

    pub fn anchor(&self) -> BinaryWord {
        self.anchor
    }

    pub fn host(&self) -> CubeGraph {
        self.host
    }

    /// Number of free coordinates.
    pub fn dimension(&self) -> u32 {
        self.free_mask.weight()
    }

    pub fn contains(&self, w: BinaryWord) -> bool {
        self.host.contains(w) && (w.bits() & !self.free_mask.bits()) == self.anchor.bits()
    }

    pub fn vertices(&self) -> Vec<BinaryWord> {
        let mask = self.free_mask.bits();
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            let bits = self.anchor.bits() | sub;
            if self.host.contains_bits(bits) {
                out.push(BinaryWord::from_raw(bits, self.host.n()));
            }
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        BinaryWord::parse_binary(s).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn vertex_index_examples() {
        let g = CubeGraph::halved(4);
        assert_eq!(g.vertex_index(w("0000")).unwrap(), 0);
        assert_eq!(g.vertex_index(w("0011")).unwrap(), 1);
        assert_eq!(g.vertex_index(w("0101")).unwrap(), 2);
        assert!(matches!(g.vertex_index(w("0001")), Err(Error::Parity { .. })));
        assert!(matches!(CubeGraph::halved_odd(4).vertex_index(w("0011")), Err(Error::Parity { .. })));
    }

    #[test]
    fn vertex_index_roundtrip_exhaustive() {
        for n in 1..=10 {
            for kind in [CubeKind::Full, CubeKind::HalvedEven, CubeKind::HalvedOdd] {
                let g = CubeGraph::new(kind, n).unwrap();
                let mut prev = None;
                for o in 0..g.vertex_count() {
                    let v = g.vertex(o).unwrap();
                    assert!(g.contains(v));
                    assert_eq!(g.vertex_index(v).unwrap(), o);
                    // ordinals follow increasing integer value
                    assert!(prev.is_none_or(|p| p < v.bits()));
                    prev = Some(v.bits());
                }
                assert!(g.vertex(g.vertex_count()).is_err());
            }
        }
    }

    #[test]
    fn neighbor_examples() {
        let g = CubeGraph::halved(4);
        let got: Vec<String> = g.neighbors(w("0000")).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        let got: Vec<String> = CubeGraph::full(3).neighbors(w("000")).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["001", "010", "100"]);
        let g12 = CubeGraph::halved(12);
        assert_eq!(g12.neighbors(w("101101000011")).unwrap().len(), 66);
        assert!(g.neighbors(w("0111")).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        for n in 2..=8 {
            for kind in [CubeKind::Full, CubeKind::HalvedEven, CubeKind::HalvedOdd] {
                let g = CubeGraph::new(kind, n).unwrap();
                let t = g.adjacency_table().unwrap();
                for o in 0..g.vertex_count() as usize {
                    let nb = t.neighbors(o);
                    assert_eq!(nb.len() as u64, g.degree());
                    for &u in nb {
                        assert_ne!(u as usize, o);
                        assert!(t.neighbors(u as usize).contains(&(o as u32)));
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_examples() {
        let g = CubeGraph::halved(6);
        let s1 = g.sphere(w("000000"), 1).unwrap();
        assert_eq!(s1.len(), 15);
        assert!(s1.iter().all(|x| x.weight() == 2));
        assert_eq!(g.sphere(w("000000"), 3).unwrap(), vec![w("111111")]);
        assert_eq!(CubeGraph::full(8).sphere(BinaryWord::zero(8), 4).unwrap().len(), 70);
        assert!(g.sphere(w("000000"), 4).is_err());
    }

    #[test]
    fn sphere_sizes_are_binomial() {
        for n in 2..=10u32 {
            for g in [CubeGraph::halved(n), CubeGraph::halved_odd(n)] {
                for v in g.vertex_bits() {
                    let v = BinaryWord::from_raw(v, n);
                    for d in 0..=g.diameter() {
                        assert_eq!(g.sphere(v, d).unwrap().len() as u64, binom(n as u64, 2 * d as u64));
                    }
                }
            }
        }
        let g = CubeGraph::halved(12);
        for o in [0u64, 17, 1000, 2047] {
            let v = g.vertex(o).unwrap();
            for d in 0..=6 {
                assert_eq!(g.sphere(v, d).unwrap().len() as u64, binom(12, 2 * d as u64));
            }
        }
    }

    #[test]
    fn face_examples() {
        let g = CubeGraph::halved(6);
        let f = Face::new(w("000011"), w("000000"), g).unwrap();
        assert_eq!(f.vertices(), vec![w("000000"), w("000011")]);
        let f = Face::new(w("001111"), w("110000"), g).unwrap();
        let vs = f.vertices();
        assert_eq!(vs.len(), 8);
        assert!(vs.iter().all(|v| v.to_string().starts_with("11") && v.parity() == 0));
        let f = Face::new(w("111111"), w("000000"), g).unwrap();
        assert_eq!(f.vertices().len(), 32);
        assert!(matches!(Face::new(w("000011"), w("000001"), g), Err(Error::MalformedFace { .. })));
    }

    #[test]
    fn two_faces_are_edges() {
        for n in 2..=8 {
            let g = CubeGraph::halved(n);
            for mask in masks_of_weight(n, 2) {
                for v in g.vertex_bits() {
                    let f = Face::through(BinaryWord::from_raw(v, n), BinaryWord::from_raw(mask, n), g).unwrap();
                    let vs = f.vertices();
                    assert_eq!(vs.len(), 2);
                    assert_eq!(g.distance(vs[0], vs[1]), 1);
                }
            }
            for s in 1..=n {
                let mask = BinaryWord::from_raw(low_mask(s), n);
                let f = Face::new(mask, BinaryWord::zero(n), g).unwrap();
                assert_eq!(f.vertices().len() as u64, 1u64 << (s - 1));
            }
        }
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(masks_of_weight(6, 2).count(), 15);
        assert_eq!(masks_of_weight(6, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_weight(6, 6).collect::<Vec<_>>(), vec![63]);
        assert_eq!(masks_of_weight(4, 5).count(), 0);
        assert_eq!(masks_of_weight(64, 1).count(), 64);
    }
}
