//! Partitions cut out by linear codes and unions of their cosets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{matrix_of, settle};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::graph::CubeGraph;
use crate::partition::Partition;
use crate::quotient::QuotientMatrix;
use crate::word::{low_mask, BinaryWord};

/// Largest syndrome span enumerated by the pair-sum report.
const MAX_SPAN_DIM: usize = 24;

/// Pair-sum statistics of the columns `b₁, …, bₙ` of the parity-check rows
/// below the all-one row.
///
/// `N(σ)` counts pairs `i < j` with `bᵢ + bⱼ = σ`; a vertex with syndrome
/// `σ` has exactly `N(σ)` neighbors in the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSumReport {
    /// `N(0)`: neighbors of a codeword inside the code.
    pub n_zero: u64,
    /// `N(σ)` for every nonzero σ in the span of the pair sums, keyed by σ
    /// written as a binary word of length `rows − 1`.
    pub counts: BTreeMap<String, u64>,
    /// Whether `N` is constant on nonzero syndromes.
    pub uniform: bool,
    /// The constant value when uniform.
    pub n_star: Option<u64>,
    /// Predicted quotient matrix `[[N(0), D−N(0)], [N*, D−N*]]`.
    pub predicted: Option<QuotientMatrix>,
}

#[derive(Clone, Debug)]
pub struct LinearPartition {
    pub code: LinearCode,
    pub report: PairSumReport,
    /// `(C, complement)` on ½H(n), carrying the verified matrix when
    /// equitable.
    pub partition: Partition,
    pub equitable: bool,
}

fn span_of(vectors: impl IntoIterator<Item = u64>) -> Result<Vec<u64>> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    if basis.len() > MAX_SPAN_DIM {
        return Err(Error::Shape("syndrome span too large to enumerate".into()));
    }
    let mut out = vec![0u64];
    for b in basis {
        let more: Vec<u64> = out.iter().map(|&x| x ^ b).collect();
        out.extend(more);
    }
    out.sort_unstable();
    Ok(out)
}

fn pair_sum_report(n: u32, rows: &[BinaryWord], degree: u64) -> Result<PairSumReport> {
    let r = rows.len() as u32 - 1;
    // column i of B as an r-bit syndrome, first row of B in the high bit
    let cols: Vec<u64> = (0..n)
        .map(|i| {
            rows[1..].iter().fold(0u64, |acc, row| (acc << 1) | u64::from(row.coord(i + 1)))
        })
        .collect();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            *counts.entry(cols[i] ^ cols[j]).or_default() += 1;
        }
    }
    let span = span_of(counts.keys().copied())?;
    let n_zero = counts.get(&0).copied().unwrap_or(0);
    let nonzero: BTreeMap<String, u64> = span
        .iter()
        .filter(|&&s| s != 0)
        .map(|&s| (BinaryWord::from_raw(s, r).to_string(), counts.get(&s).copied().unwrap_or(0)))
        .collect();
    let first = nonzero.values().next().copied();
    let uniform = nonzero.values().all(|&v| Some(v) == first);
    let n_star = if uniform { first } else { None };
    let predicted = n_star.map(|ns| {
        let d = degree as i64;
        QuotientMatrix::two(n_zero as i64, d - n_zero as i64, ns as i64, d - ns as i64)
    });
    Ok(PairSumReport { n_zero, counts: nonzero, uniform, n_star, predicted })
}

/// The partition `(C, complement)` of ½H(n) for the kernel `C` of a
/// parity-check matrix whose first row is the all-one word.
///
/// Equitability is decided by direct counting; the pair-sum report is a
/// prediction that the tests compare against that verdict.
pub fn linear_partition(n: u32, rows: &[BinaryWord]) -> Result<LinearPartition> {
    let first = rows.first().ok_or_else(|| Error::Form("no parity-check rows".into()))?;
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Form(format!("row {bad} has length {}, expected {n}", bad.len())));
    }
    if first.bits() != low_mask(n) {
        return Err(Error::Form(format!("first row must be the all-one word, got {first}")));
    }
    let code = LinearCode::kernel(n, rows)?;
    let g = CubeGraph::halved(n);
    if code.size() == g.vertex_count() {
        return Err(Error::DegenerateCell(1));
    }
    let report = pair_sum_report(n, rows, g.degree())?;
    let raw = Partition::from_fn(g, 2, |b| u8::from(code.reduce_bits(b) != 0))?;
    let (partition, equitable) = match matrix_of(&raw) {
        Ok(s) => (raw.with_claim(s), true),
        Err(Error::NotEquitable(_)) => (raw, false),
        Err(e) => return Err(e),
    };
    Ok(LinearPartition { code, report, partition, equitable })
}

/// Union of the cosets `rᵢ + C` of a linear code whose partition
/// `(C, complement)` of ½H(n) is equitable.
///
/// With `t` representatives the matrix is `[[a+(t−1)c, b−(t−1)c], [tc, d−(t−1)c]]`.
pub fn merge_cosets(code: &LinearCode, reps: &[BinaryWord]) -> Result<Partition> {
    let n = code.n();
    let g = CubeGraph::halved(n);
    if !code.is_even() {
        return Err(Error::Form("code has odd-weight words".into()));
    }
    let base = Partition::from_fn(g, 2, |b| u8::from(code.reduce_bits(b) != 0))?;
    let (a, b, c, d) = matrix_of(&base)?.abcd()?;
    let t = reps.len() as u64;
    let cosets = g.vertex_count() / code.size();
    if t == 0 || t >= cosets {
        return Err(Error::Bound { t: t as usize, bound: cosets as usize });
    }
    let mut leaders = Vec::with_capacity(reps.len());
    for &r in reps {
        g.check_vertex(r)?;
        let leader = code.reduce_bits(r.bits());
        if leaders.contains(&leader) {
            return Err(Error::DuplicateCoset(r.to_string()));
        }
        leaders.push(leader);
    }
    let ti = t as i64;
    let claimed = QuotientMatrix::two(a + (ti - 1) * c, b - (ti - 1) * c, ti * c, d - (ti - 1) * c);
    let q = Partition::from_fn(g, 2, |x| u8::from(!leaders.contains(&code.reduce_bits(x))))?;
    settle(q, claimed)
}
