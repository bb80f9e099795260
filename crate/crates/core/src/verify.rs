//! Ground-truth checks by direct neighbor counting.
//!
//! Nothing in this module consults a construction's claimed matrix when
//! deciding equitability; claims are compared only after extraction.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CubeGraph;
use crate::partition::Partition;
use crate::quotient::QuotientMatrix;
use crate::word::BinaryWord;

/// A vertex whose neighbor count into `cell` differs from that of the first
/// vertex of its own cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: String,
    pub vertex_cell: usize,
    pub cell: usize,
    pub observed: i64,
    pub expected: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertex {} in cell {} has {} neighbors in cell {}, expected {}",
            self.vertex, self.vertex_cell, self.observed, self.cell, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Equitability {
    Equitable { matrix: QuotientMatrix },
    NotEquitable { witness: Witness },
}

impl Equitability {
    pub fn matrix(&self) -> Option<&QuotientMatrix> {
        match self {
            Equitability::Equitable { matrix } => Some(matrix),
            Equitability::NotEquitable { .. } => None,
        }
    }

    pub fn is_equitable(&self) -> bool {
        matches!(self, Equitability::Equitable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    #[serde(flatten)]
    pub verdict: Equitability,
    pub claimed: Option<QuotientMatrix>,
    /// `None` when no claim was attached or the partition is not equitable.
    pub claim_matches: Option<bool>,
}

impl VerificationOutcome {
    /// The verified matrix, or an error if not equitable or the claim differs.
    pub fn into_matrix(self) -> Result<QuotientMatrix> {
        match self.verdict {
            Equitability::NotEquitable { witness } => Err(Error::NotEquitable(witness)),
            Equitability::Equitable { matrix } => match (&self.claimed, self.claim_matches) {
                (Some(claimed), Some(false)) => {
                    Err(Error::ClaimMismatch { claimed: claimed.to_string(), verified: matrix.to_string() })
                }
                _ => Ok(matrix),
            },
        }
    }
}

fn neighbor_counts(g: CubeGraph, labels: &[u8], k: usize, bits: u64, counts: &mut [i64]) {
    counts[..k].fill(0);
    g.for_each_neighbor(bits, |u| counts[labels[g.ordinal_of(u)] as usize] += 1);
}

/// Checks that every vertex of cell `i` has the same number of neighbors in
/// each cell `j`, and extracts the quotient matrix.
pub fn verify_equitable(p: &Partition) -> Result<VerificationOutcome> {
    let g = p.graph();
    let k = p.k();
    let labels = p.labels();

    // reference row of each cell: its lowest-ordinal vertex
    let mut first = vec![None; k];
    for (o, &l) in labels.iter().enumerate() {
        if first[l as usize].is_none() {
            first[l as usize] = Some(o);
        }
    }
    let mut s = QuotientMatrix::zeros(k);
    let mut counts = vec![0i64; k];
    for (i, f) in first.iter().enumerate() {
        let o = f.ok_or(Error::DegenerateCell(i))?;
        neighbor_counts(g, labels, k, g.bits_at(o), &mut counts);
        for j in 0..k {
            s[(i, j)] = counts[j];
        }
    }

    const CHUNK: usize = 1024;
    let offending = labels
        .par_chunks(CHUNK)
        .enumerate()
        .filter_map(|(ci, chunk)| {
            let mut counts = vec![0i64; k];
            for (off, &l) in chunk.iter().enumerate() {
                let o = ci * CHUNK + off;
                neighbor_counts(g, labels, k, g.bits_at(o), &mut counts);
                let i = l as usize;
                if let Some(j) = (0..k).find(|&j| counts[j] != s[(i, j)]) {
                    return Some((o, j, counts[j]));
                }
            }
            None
        })
        .min();

    let verdict = match offending {
        None => Equitability::Equitable { matrix: s.clone() },
        Some((o, j, observed)) => {
            let i = labels[o] as usize;
            Equitability::NotEquitable {
                witness: Witness {
                    vertex: BinaryWord::from_raw(g.bits_at(o), g.n()).to_string(),
                    vertex_cell: i,
                    cell: j,
                    observed,
                    expected: s[(i, j)],
                },
            }
        }
    };
    let claimed = p.claimed().cloned();
    let claim_matches = match (&verdict, &claimed) {
        (Equitability::Equitable { matrix }, Some(c)) => Some(matrix == c),
        _ => None,
    };
    Ok(VerificationOutcome { verdict, claimed, claim_matches })
}

/// Verifies `p` and requires the extracted matrix to equal `claimed`.
pub fn certify(p: Partition, claimed: QuotientMatrix) -> Result<Partition> {
    let p = p.with_claim(claimed);
    verify_equitable(&p)?.into_matrix()?;
    Ok(p)
}

/// BFS layers `C⁽⁰⁾, …, C⁽ρ⁾` of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePartition {
    graph: CubeGraph,
    /// Graph distance to the code, by vertex ordinal.
    dist: Vec<u8>,
    layer_sizes: Vec<u64>,
}

impl DistancePartition {
    pub fn graph(&self) -> CubeGraph {
        self.graph
    }

    pub fn covering_radius(&self) -> usize {
        self.layer_sizes.len() - 1
    }

    pub fn layer_sizes(&self) -> &[u64] {
        &self.layer_sizes
    }

    pub fn distance_of_bits(&self, bits: u64) -> u8 {
        self.dist[self.graph.ordinal_of(bits)]
    }

    pub fn layer(&self, d: usize) -> Vec<BinaryWord> {
        let g = self.graph;
        self.dist
            .iter()
            .enumerate()
            .filter(|(_, &x)| x as usize == d)
            .map(|(o, _)| BinaryWord::from_raw(g.bits_at(o), g.n()))
            .collect()
    }

    /// The layers as a `(ρ+1)`-cell partition.
    pub fn to_partition(&self) -> Result<Partition> {
        Partition::new(self.graph, self.layer_sizes.len(), self.dist.clone())
    }
}

pub fn distance_partition(g: CubeGraph, code: &[BinaryWord]) -> Result<DistancePartition> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let v = g.vertex_count() as usize;
    let mut dist = vec![u8::MAX; v];
    let mut frontier = Vec::new();
    for &w in code {
        g.check_vertex(w)?;
        let o = g.ordinal_of(w.bits());
        if dist[o] == u8::MAX {
            dist[o] = 0;
            frontier.push(w.bits());
        }
    }
    let mut layer_sizes = vec![frontier.len() as u64];
    let mut d = 0u8;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &b in &frontier {
            g.for_each_neighbor(b, |u| {
                let o = g.ordinal_of(u);
                if dist[o] == u8::MAX {
                    dist[o] = d;
                    next.push(u);
                }
            });
        }
        if !next.is_empty() {
            layer_sizes.push(next.len() as u64);
        }
        frontier = next;
    }
    Ok(DistancePartition { graph: g, dist, layer_sizes })
}

/// Equitability of the distance partition of `code`.
pub fn is_completely_regular(g: CubeGraph, code: &[BinaryWord]) -> Result<Equitability> {
    let dp = distance_partition(g, code)?;
    Ok(verify_equitable(&dp.to_partition()?)?.verdict)
}

/// `table[i][d] = |Cᵢ ∩ D⁽ᵈ⁾|`.
pub fn weight_distribution(p: &Partition, d: &DistancePartition) -> Result<Vec<Vec<u64>>> {
    if p.graph() != d.graph() {
        return Err(Error::GraphMismatch(p.graph().to_string(), d.graph().to_string()));
    }
    let mut table = vec![vec![0u64; d.layer_sizes.len()]; p.k()];
    for (&l, &x) in p.labels().iter().zip(&d.dist) {
        table[l as usize][x as usize] += 1;
    }
    Ok(table)
}

/// Empirical distance-count matrices: entry `[j][m]` of the `d`-th matrix is
/// the number of vertices of cell `m` at graph distance `d` from a vertex of
/// cell `j`. `None` if some count is not constant over its cell.
pub fn distance_count_matrices(p: &Partition) -> Option<Vec<QuotientMatrix>> {
    let g = p.graph();
    let k = p.k();
    let labels = p.labels();
    let step = g.step();
    let diam = g.diameter() as usize;
    let bits: Vec<u64> = g.vertex_bits().collect();

    let profile = |o: usize| -> Vec<i64> {
        let mut c = vec![0i64; (diam + 1) * k];
        let v = bits[o];
        for (u, &l) in bits.iter().zip(labels) {
            let d = ((v ^ u).count_ones() / step) as usize;
            c[d * k + l as usize] += 1;
        }
        c
    };

    let mut reference: Vec<Option<Vec<i64>>> = vec![None; k];
    for (o, &l) in labels.iter().enumerate() {
        if reference[l as usize].is_none() {
            reference[l as usize] = Some(profile(o));
        }
    }
    let reference: Vec<Vec<i64>> = reference.into_iter().collect::<Option<_>>()?;
    let consistent = (0..labels.len())
        .into_par_iter()
        .all(|o| profile(o) == reference[labels[o] as usize]);
    if !consistent {
        return None;
    }
    Some(
        (0..=diam)
            .map(|d| {
                let mut m = QuotientMatrix::zeros(k);
                for j in 0..k {
                    for c in 0..k {
                        m[(j, c)] = reference[j][d * k + c];
                    }
                }
                m
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CubeKind;
    use crate::quotient::recursion_table;

    fn w(s: &str) -> BinaryWord {
        BinaryWord::parse_binary(s).unwrap()
    }

    #[test]
    fn antipodal_pair_in_half_six() {
        let g = CubeGraph::halved(6);
        let p = Partition::from_cell0(g, [w("000000"), w("111111")]).unwrap();
        let out = verify_equitable(&p).unwrap();
        assert_eq!(out.verdict.matrix().unwrap(), &QuotientMatrix::two(0, 15, 1, 14));
        assert_eq!(out.claim_matches, None);
    }

    #[test]
    fn single_cell_is_degree() {
        for g in [CubeGraph::full(5), CubeGraph::halved(7), CubeGraph::halved_odd(6)] {
            let out = verify_equitable(&Partition::single_cell(g).unwrap()).unwrap();
            assert_eq!(out.verdict.matrix().unwrap().rows(), vec![vec![g.degree() as i64]]);
        }
    }

    #[test]
    fn half_four_singleton_witness() {
        let g = CubeGraph::halved(4);
        let p = Partition::from_cell0(g, [w("0000")]).unwrap();
        let out = verify_equitable(&p).unwrap();
        let Equitability::NotEquitable { witness } = out.verdict else { panic!("should fail") };
        assert_eq!(witness.vertex, "1111");
        assert_eq!((witness.vertex_cell, witness.cell, witness.observed, witness.expected), (1, 0, 0, 1));
        // recount the witness by hand
        let v = w("1111");
        let n0 = g.neighbors(v).unwrap().iter().filter(|u| p.label(**u).unwrap() == 0).count();
        assert_eq!(n0 as i64, witness.observed);
    }

    #[test]
    fn empty_cell_is_degenerate() {
        let g = CubeGraph::halved(4);
        let p = Partition::new(g, 3, vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
        assert_eq!(verify_equitable(&p), Err(Error::DegenerateCell(2)));
    }

    #[test]
    fn claim_mismatch_reported() {
        let g = CubeGraph::halved(6);
        let p = Partition::from_cell0(g, [w("000000"), w("111111")])
            .unwrap()
            .with_claim(QuotientMatrix::two(1, 14, 2, 13));
        let out = verify_equitable(&p).unwrap();
        assert_eq!(out.claim_matches, Some(false));
        assert!(matches!(out.into_matrix(), Err(Error::ClaimMismatch { .. })));
    }

    #[test]
    fn swap_permutes_matrix() {
        let g = CubeGraph::halved(6);
        let p = Partition::from_cell0(g, [w("000000"), w("111111"), w("000011"), w("111100")]).unwrap();
        let s = verify_equitable(&p).unwrap().into_matrix().unwrap();
        let q = verify_equitable(&p.relabeled(&[1, 0]).unwrap()).unwrap().into_matrix().unwrap();
        let (a, b, c, d) = s.abcd().unwrap();
        assert_eq!(q, QuotientMatrix::two(d, c, b, a));
    }

    #[test]
    fn repetition_distance_partition() {
        let g = CubeGraph::full(8);
        let dp = distance_partition(g, &[BinaryWord::zero(8), BinaryWord::ones(8)]).unwrap();
        assert_eq!(dp.covering_radius(), 4);
        assert_eq!(dp.layer_sizes(), &[2, 16, 56, 112, 70]);
        let s = is_completely_regular(g, &[BinaryWord::zero(8), BinaryWord::ones(8)]).unwrap();
        let s = s.matrix().unwrap().clone();
        assert_eq!(s.rows()[0], vec![0, 8, 0, 0, 0]);
        // tridiagonal
        for i in 0..5usize {
            for j in 0..5usize {
                if i.abs_diff(j) > 1 {
                    assert_eq!(s[(i, j)], 0);
                }
            }
        }
    }

    #[test]
    fn layers_are_bfs_shells() {
        let g = CubeGraph::halved(8);
        let code = [w("00000000"), w("11110000"), w("00111100")];
        let dp = distance_partition(g, &code).unwrap();
        assert_eq!(dp.layer_sizes().iter().sum::<u64>(), g.vertex_count());
        for d in 1..=dp.covering_radius() {
            for v in dp.layer(d) {
                let min = code.iter().map(|c| g.distance(*c, v)).min().unwrap();
                assert_eq!(min as usize, d);
            }
        }
    }

    #[test]
    fn trivial_and_singleton_codes() {
        let g = CubeGraph::halved(6);
        let all: Vec<_> = g.vertex_bits().map(|b| BinaryWord::from_raw(b, 6)).collect();
        assert_eq!(distance_partition(g, &all).unwrap().covering_radius(), 0);
        let dp = distance_partition(g, &[w("000000")]).unwrap();
        assert_eq!(dp.covering_radius(), 3);
        assert_eq!(dp.layer_sizes(), &[1, 15, 15, 1]);
        assert_eq!(distance_partition(g, &[]), Err(Error::EmptyCode));
        for n in [4u32, 5, 6, 7, 8] {
            for kind in [CubeKind::HalvedEven, CubeKind::HalvedOdd] {
                let g = CubeGraph::new(kind, n).unwrap();
                let v = g.vertex(3).unwrap();
                assert!(is_completely_regular(g, &[v]).unwrap().is_equitable());
            }
        }
    }

    #[test]
    fn asymmetric_code_not_completely_regular() {
        let g = CubeGraph::full(4);
        let out = is_completely_regular(g, &[w("0000"), w("1100"), w("0011")]).unwrap();
        assert!(!out.is_equitable());
    }

    #[test]
    fn weight_distribution_examples() {
        let g = CubeGraph::halved(6);
        let dp = distance_partition(g, &[w("000000")]).unwrap();
        let whole = Partition::single_cell(g).unwrap();
        assert_eq!(weight_distribution(&whole, &dp).unwrap(), vec![vec![1, 15, 15, 1]]);
        let p = Partition::from_cell0(g, [w("000000"), w("111111")]).unwrap();
        assert_eq!(weight_distribution(&p, &dp).unwrap()[0], vec![1, 0, 0, 1]);
        let other = distance_partition(CubeGraph::halved_odd(6), &[w("000001")]).unwrap();
        assert!(matches!(weight_distribution(&p, &other), Err(Error::GraphMismatch(..))));
    }

    #[test]
    fn empirical_distance_counts_match_recursion() {
        let g = CubeGraph::halved(6);
        let p = Partition::from_cell0(g, [w("000000"), w("111111"), w("000011"), w("111100")]).unwrap();
        let s = verify_equitable(&p).unwrap().into_matrix().unwrap();
        let emp = distance_count_matrices(&p).unwrap();
        let t = recursion_table(&s, 6);
        for (d, m) in emp.iter().enumerate() {
            assert_eq!(&t.layer(2 * d as u32).unwrap().to_integer().unwrap(), m);
        }
        let bad = Partition::from_cell0(g, [w("000000")]).unwrap();
        assert!(distance_count_matrices(&bad).is_none());
    }
}
