//! Vertex labelings and their text file format.
//!
//! ```text
//! n=6 kind=halved-even k=2
//! S=0,15;1,14
//! 00000000000000000000000000000001
//! ```
//!
//! The `S=` line is optional. The body lists one label per vertex in
//! ordinal order, 64 per line: single digits when `k <= 10`, comma-separated
//! integers otherwise.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CubeGraph, CubeKind};
use crate::quotient::QuotientMatrix;
use crate::word::BinaryWord;

/// Partitions are materialized; cap the label array at 2^26 entries.
pub const MAX_PARTITION_N: u32 = 26;

const LINE_WIDTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    graph: CubeGraph,
    k: usize,
    labels: Vec<u8>,
    claimed: Option<QuotientMatrix>,
}

fn check_size(graph: CubeGraph) -> Result<()> {
    let limit = if graph.kind() == CubeKind::Full { MAX_PARTITION_N } else { MAX_PARTITION_N + 1 };
    if graph.n() > limit {
        return Err(Error::Shape(format!("{graph} is too large to materialize a labeling")));
    }
    Ok(())
}

impl Partition {
    pub fn new(graph: CubeGraph, k: usize, labels: Vec<u8>) -> Result<Self> {
        check_size(graph)?;
        if k == 0 || k > 255 {
            return Err(Error::Shape(format!("cell count {k} not in 1..=255")));
        }
        if labels.len() as u64 != graph.vertex_count() {
            return Err(Error::Shape(format!(
                "{} labels for {} vertices of {graph}",
                labels.len(),
                graph.vertex_count()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&l| l as usize >= k) {
            return Err(Error::Shape(format!("label {bad} out of range for k = {k}")));
        }
        Ok(Partition { graph, k, labels, claimed: None })
    }

    /// Labels every vertex by `f(bits)`.
    pub fn from_fn(graph: CubeGraph, k: usize, f: impl Fn(u64) -> u8) -> Result<Self> {
        check_size(graph)?;
        let labels = graph.vertex_bits().map(f).collect();
        Partition::new(graph, k, labels)
    }

    /// The 2-partition `(cell0, rest)`.
    pub fn from_cell0<I: IntoIterator<Item = BinaryWord>>(graph: CubeGraph, cell0: I) -> Result<Self> {
        check_size(graph)?;
        let mut labels = vec![1u8; graph.vertex_count() as usize];
        for w in cell0 {
            graph.check_vertex(w)?;
            labels[graph.ordinal_of(w.bits())] = 0;
        }
        Partition::new(graph, 2, labels)
    }

    pub fn single_cell(graph: CubeGraph) -> Result<Self> {
        check_size(graph)?;
        Partition::new(graph, 1, vec![0; graph.vertex_count() as usize])
    }

    pub fn with_claim(mut self, s: QuotientMatrix) -> Self {
        self.claimed = Some(s);
        self
    }

    pub fn clear_claim(mut self) -> Self {
        self.claimed = None;
        self
    }

    pub fn graph(&self) -> CubeGraph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn claimed(&self) -> Option<&QuotientMatrix> {
        self.claimed.as_ref()
    }

    #[inline]
    pub fn label_of_bits(&self, bits: u64) -> u8 {
        self.labels[self.graph.ordinal_of(bits)]
    }

    pub fn label(&self, w: BinaryWord) -> Result<u8> {
        self.graph.check_vertex(w)?;
        Ok(self.label_of_bits(w.bits()))
    }

    pub fn cell_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.k];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    pub fn cell(&self, i: usize) -> Vec<BinaryWord> {
        let n = self.graph.n();
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l as usize == i)
            .map(|(o, _)| BinaryWord::from_raw(self.graph.bits_at(o), n))
            .collect()
    }

    pub fn cell_set(&self, i: usize) -> BTreeSet<u64> {
        self.cell(i).into_iter().map(|w| w.bits()).collect()
    }

    /// Renames cell `i` to `perm[i]`; the claim is permuted along.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k];
        if perm.len() != self.k || perm.iter().any(|&p| p >= self.k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape("relabeling must be a permutation of the cells".into()));
        }
        Ok(Partition {
            graph: self.graph,
            k: self.k,
            labels: self.labels.iter().map(|&l| perm[l as usize] as u8).collect(),
            claimed: self.claimed.as_ref().map(|s| s.permuted(perm)),
        })
    }

    /// Same labels, with cell `j` merged into cell `i` and the remaining cells
    /// renumbered in order. No claim is carried.
    pub fn merged(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.k || j >= self.k || i == j {
            return Err(Error::Shape(format!("cannot merge cells {i} and {j} of {}", self.k)));
        }
        let mut map = Vec::with_capacity(self.k);
        let mut next = 0u8;
        for c in 0..self.k {
            if c == j {
                map.push(u8::MAX);
            } else {
                map.push(next);
                next += 1;
            }
        }
        map[j] = map[i];
        Partition::new(self.graph, self.k - 1, self.labels.iter().map(|&l| map[l as usize]).collect())
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={} kind={} k={}", self.graph.n(), self.graph.kind(), self.k);
        if let Some(s) = &self.claimed {
            let _ = writeln!(out, "S={}", s.to_compact());
        }
        for chunk in self.labels.chunks(LINE_WIDTH) {
            if self.k <= 10 {
                for &l in chunk {
                    out.push((b'0' + l) as char);
                }
            } else {
                out.push_str(&chunk.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty partition file".into()))?;
        let (mut n, mut kind, mut k) = (None, None, None);
        for field in header.split_whitespace() {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field {field:?}")))?;
            match key {
                "n" => n = Some(val.parse::<u32>().map_err(|e| Error::Parse(format!("bad n: {e}")))?),
                "kind" => kind = Some(val.parse::<CubeKind>()?),
                "k" => k = Some(val.parse::<usize>().map_err(|e| Error::Parse(format!("bad k: {e}")))?),
                _ => return Err(Error::Parse(format!("unknown header field {key:?}"))),
            }
        }
        let (n, kind, k) = match (n, kind, k) {
            (Some(n), Some(kind), Some(k)) => (n, kind, k),
            _ => return Err(Error::Parse("header must be 'n=<n> kind=<kind> k=<k>'".into())),
        };
        let graph = CubeGraph::new(kind, n)?;
        check_size(graph)?;
        let mut claimed = None;
        let mut labels = Vec::with_capacity(graph.vertex_count() as usize);
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(s) = line.strip_prefix("S=") {
                if !labels.is_empty() || claimed.is_some() {
                    return Err(Error::Parse("S= line must directly follow the header".into()));
                }
                claimed = Some(QuotientMatrix::parse_compact(s)?);
                continue;
            }
            if k <= 10 {
                for ch in line.chars() {
                    let d = ch.to_digit(10).ok_or_else(|| Error::Parse(format!("bad label symbol {ch:?}")))?;
                    labels.push(d as u8);
                }
            } else {
                for tok in line.split(',') {
                    let l = tok.trim().parse::<u8>().map_err(|e| Error::Parse(format!("bad label {tok:?}: {e}")))?;
                    labels.push(l);
                }
            }
        }
        let mut p = Partition::new(graph, k, labels)?;
        if let Some(s) = claimed {
            if s.k() != k {
                return Err(Error::Shape(format!("claimed matrix is {}x{} but k = {k}", s.k(), s.k())));
            }
            p.claimed = Some(s);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_roundtrip_small_k() {
        let g = CubeGraph::halved(6);
        let p = Partition::from_cell0(g, [BinaryWord::zero(6), BinaryWord::ones(6)])
            .unwrap()
            .with_claim(QuotientMatrix::two(0, 15, 1, 14));
        let text = p.to_file_string();
        assert!(text.starts_with("n=6 kind=halved-even k=2\nS=0,15;1,14\n0111"));
        assert_eq!(text.lines().count(), 3);
        assert_eq!(Partition::parse_file(&text).unwrap(), p);
    }

    #[test]
    fn file_roundtrip_large_k() {
        let g = CubeGraph::full(7);
        let p = Partition::from_fn(g, 12, |b| (b % 12) as u8).unwrap();
        let text = p.to_file_string();
        assert_eq!(text.lines().count(), 1 + 2);
        assert_eq!(Partition::parse_file(&text).unwrap(), p);
    }

    #[test]
    fn malformed_files_are_errors() {
        assert!(Partition::parse_file("").is_err());
        assert!(Partition::parse_file("n=4 kind=halved-even\n01234567\n").is_err());
        assert!(Partition::parse_file("n=4 kind=halved-even k=2\n0101010\n").is_err());
        assert!(Partition::parse_file("n=4 kind=halved-even k=2\n01010102\n").is_err());
        assert!(Partition::parse_file("n=4 kind=cube k=2\n01010101\n").is_err());
        assert!(Partition::parse_file("n=4 kind=halved-even k=2\n0101x101\n").is_err());
        assert!(Partition::parse_file("n=4 kind=halved-even k=2\nS=1,2;3\n01010101\n").is_err());
    }

    #[test]
    fn merge_and_relabel() {
        let g = CubeGraph::full(3);
        let p = Partition::from_fn(g, 3, |b| (b.count_ones() % 3) as u8).unwrap();
        let m = p.merged(0, 2).unwrap();
        assert_eq!(m.k(), 2);
        assert_eq!(m.cell_sizes(), vec![5, 3]);
        let r = p.relabeled(&[2, 0, 1]).unwrap();
        assert_eq!(r.cell_sizes(), vec![3, 3, 2]);
        assert!(p.relabeled(&[0, 0, 1]).is_err());
    }
}
