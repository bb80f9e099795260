//! Binary codes: linear codes from generators or parity checks with their
//! cosets, and the explicit codes used by the radius-4 constructions.
//!
//! Code files hold a header line `n=<n>` followed by one binary word per line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CubeGraph;
use crate::verify::{distance_partition, DistancePartition};
use crate::word::{low_mask, BinaryWord};

/// A GF(2)-linear code kept as a reduced echelon basis: every basis vector
/// has a distinct leading bit that no other basis vector contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    n: u32,
    basis: Vec<u64>,
}

fn check_lengths(n: u32, words: &[BinaryWord]) -> Result<()> {
    if let Some(w) = words.iter().find(|w| w.len() != n) {
        return Err(Error::Shape(format!("word {w} has length {}, expected {n}", w.len())));
    }
    Ok(())
}

/// Reduced echelon form of the span of `rows`.
fn echelon(rows: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            let pivot = 63 - b.leading_zeros();
            if r >> pivot & 1 == 1 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let pivot = 63 - r.leading_zeros();
        for b in basis.iter_mut() {
            if *b >> pivot & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    basis
}

impl LinearCode {
    /// The span of `generators` in GF(2)^n.
    pub fn span(n: u32, generators: &[BinaryWord]) -> Result<Self> {
        check_lengths(n, generators)?;
        BinaryWord::new(0, n)?;
        Ok(LinearCode { n, basis: echelon(generators.iter().map(|g| g.bits())) })
    }

    /// The kernel `{x : H·x = 0}` of the parity-check rows.
    pub fn kernel(n: u32, parity_rows: &[BinaryWord]) -> Result<Self> {
        check_lengths(n, parity_rows)?;
        BinaryWord::new(0, n)?;
        let h = echelon(parity_rows.iter().map(|r| r.bits()));
        let pivots: Vec<u32> = h.iter().map(|r| 63 - r.leading_zeros()).collect();
        let mut gens = Vec::new();
        for free in (0..n).filter(|p| !pivots.contains(p)) {
            // set the free bit, then fix each pivot bit so its row is satisfied
            let mut x = 1u64 << free;
            for (row, &p) in h.iter().zip(&pivots) {
                if (row & x).count_ones() % 2 == 1 {
                    x |= 1u64 << p;
                }
            }
            gens.push(x);
        }
        Ok(LinearCode { n, basis: echelon(gens) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn size(&self) -> u64 {
        1u64 << self.basis.len()
    }

    pub fn basis(&self) -> Vec<BinaryWord> {
        self.basis.iter().map(|&b| BinaryWord::from_raw(b, self.n)).collect()
    }

    /// Coset leader under the echelon basis: zero on every pivot bit.
    pub fn reduce_bits(&self, mut w: u64) -> u64 {
        for &b in &self.basis {
            let pivot = 63 - b.leading_zeros();
            if w >> pivot & 1 == 1 {
                w ^= b;
            }
        }
        w
    }

    pub fn contains(&self, w: BinaryWord) -> bool {
        w.len() == self.n && self.reduce_bits(w.bits()) == 0
    }

    pub fn same_coset(&self, u: BinaryWord, v: BinaryWord) -> bool {
        self.contains(u + v)
    }

    /// All codewords, ascending.
    pub fn codewords(&self) -> Vec<BinaryWord> {
        let mut out: Vec<u64> = vec![0];
        for &b in &self.basis {
            let more: Vec<u64> = out.iter().map(|&w| w ^ b).collect();
            out.extend(more);
        }
        out.sort_unstable();
        out.into_iter().map(|w| BinaryWord::from_raw(w, self.n)).collect()
    }

    pub fn is_even(&self) -> bool {
        self.basis.iter().all(|b| b.count_ones() % 2 == 0)
    }

    /// The coset `rep + C`, ascending.
    pub fn coset(&self, rep: BinaryWord) -> Vec<BinaryWord> {
        let mut out: Vec<BinaryWord> = self.codewords().into_iter().map(|c| c + rep).collect();
        out.sort_unstable();
        out
    }

    /// Minimal representatives of all cosets, ascending. With `even_only`
    /// the cosets cover only the even-weight words (the code must be even).
    pub fn coset_representatives(&self, even_only: bool) -> Result<Vec<BinaryWord>> {
        if even_only && !self.is_even() {
            return Err(Error::Form("code has odd-weight words; cosets do not stay in the even-weight space".into()));
        }
        if self.n > 30 {
            return Err(Error::Shape("coset enumeration limited to n <= 30".into()));
        }
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for w in 0..=low_mask(self.n) {
            if even_only && w.count_ones() % 2 == 1 {
                continue;
            }
            if seen.insert(self.reduce_bits(w)) {
                reps.push(BinaryWord::from_raw(w, self.n));
            }
        }
        Ok(reps)
    }

    pub fn to_unrestricted(&self) -> UnrestrictedCode {
        UnrestrictedCode { n: self.n, words: self.codewords() }
    }
}

/// An explicit set of codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnrestrictedCode {
    n: u32,
    words: Vec<BinaryWord>,
}

impl UnrestrictedCode {
    pub fn new(n: u32, words: Vec<BinaryWord>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        check_lengths(n, &words)?;
        let mut sorted = words;
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::Shape(format!("duplicate codeword {}", w[0])));
        }
        Ok(UnrestrictedCode { n, words: sorted })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.words.iter().all(|w| w.parity() == 0)
    }

    /// Minimum pairwise Hamming distance; `None` for a single word.
    pub fn min_distance(&self) -> Option<u32> {
        let mut best = None;
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let d = u.distance(*v);
                best = Some(best.map_or(d, |b: u32| b.min(d)));
            }
        }
        best
    }

    pub fn distance_partition(&self) -> Result<DistancePartition> {
        distance_partition(CubeGraph::new(crate::graph::CubeKind::Full, self.n)?, &self.words)
    }

    /// Covering radius in H(n).
    pub fn covering_radius(&self) -> Result<usize> {
        Ok(self.distance_partition()?.covering_radius())
    }

    /// The code translated by `t`.
    pub fn translate(&self, t: BinaryWord) -> Result<Self> {
        UnrestrictedCode::new(self.n, self.words.iter().map(|&w| w + t).collect())
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for w in &self.words {
            let _ = writeln!(out, "{w}");
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("code file header must be 'n=<n>', got {header:?}")))?;
        let words = lines.map(|l| BinaryWord::parse(l, n)).collect::<Result<Vec<_>>>()?;
        UnrestrictedCode::new(n, words)
    }
}

/// `{0ⁿ, 1ⁿ}`.
pub fn repetition(n: u32) -> Result<UnrestrictedCode> {
    if n < 2 {
        return Err(Error::Shape(format!("repetition code needs n >= 2, got {n}")));
    }
    UnrestrictedCode::new(n, vec![BinaryWord::zero(n), BinaryWord::ones(n)])
}

const PALEY_Q: i64 = 11;

fn legendre_mod11(x: i64) -> i64 {
    let x = x.rem_euclid(PALEY_Q);
    if x == 0 {
        0
    } else if (1..PALEY_Q).any(|y| (y * y) % PALEY_Q == x) {
        1
    } else {
        -1
    }
}

/// Normalized order-12 Hadamard matrix from the Paley construction over
/// GF(11): `H = I + [[0, 1ᵀ], [−1, Q]]` with `Q[i][j] = χ(j − i)`, rows then
/// negated so that the first column is all `+1`.
pub fn paley_hadamard12() -> Vec<Vec<i64>> {
    let m = (PALEY_Q + 1) as usize;
    let mut h = vec![vec![0i64; m]; m];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let s = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => legendre_mod11(j as i64 - i as i64),
            };
            *x = s + i64::from(i == j);
        }
    }
    for row in h.iter_mut() {
        if row[0] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    h
}

/// The 24-word length-12 code: rows of the normalized Paley Hadamard matrix
/// under `+1 → 0`, `−1 → 1`, together with their complements.
pub fn hadamard12() -> UnrestrictedCode {
    let mut words = Vec::with_capacity(24);
    for row in paley_hadamard12() {
        let bits = row.iter().fold(0u64, |acc, &x| (acc << 1) | u64::from(x < 0));
        let w = BinaryWord::from_raw(bits, 12);
        words.push(w);
        words.push(w.complement());
    }
    UnrestrictedCode::new(12, words).expect("Hadamard rows are distinct")
}
