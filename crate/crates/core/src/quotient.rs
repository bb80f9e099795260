//! Quotient-matrix algebra for halved cubes: the eigenvalues θᵢ(n), the four
//! necessary conditions for a 2×2 matrix to be the quotient matrix of an
//! equitable 2-partition of ½H(n), the distance-layer recursion, candidate
//! enumeration, and the minimum-eigenvalue correspondence with H(n−1).
//!
//! Everything here is exact: entries are `i64`, and the division step of the
//! recursion runs over arbitrary-precision rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CubeGraph, CubeKind};

/// A square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct QuotientMatrix {
    k: usize,
    data: Vec<i64>,
}

impl QuotientMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Shape("quotient matrix must be square and nonempty".into()));
        }
        Ok(QuotientMatrix { k, data: rows.into_iter().flatten().collect() })
    }

    /// `[[a, b], [c, d]]`.
    pub fn two(a: i64, b: i64, c: i64, d: i64) -> Self {
        QuotientMatrix { k: 2, data: vec![a, b, c, d] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = QuotientMatrix::zeros(k);
        for i in 0..k {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn zeros(k: usize) -> Self {
        QuotientMatrix { k, data: vec![0; k * k] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.data.chunks(self.k).map(|r| r.iter().sum()).collect()
    }

    /// `(a, b, c, d)` of a 2×2 matrix.
    pub fn abcd(&self) -> Result<(i64, i64, i64, i64)> {
        if self.k != 2 {
            return Err(Error::Shape(format!("expected a 2x2 matrix, got {}x{}", self.k, self.k)));
        }
        Ok((self.data[0], self.data[1], self.data[2], self.data[3]))
    }

    /// The matrix seen after renaming cell `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut m = QuotientMatrix::zeros(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                m[(perm[i], perm[j])] = self[(i, j)];
            }
        }
        m
    }

    /// For 2×2: `[[d, c], [b, a]]`, the matrix of the swapped partition.
    pub fn swapped(&self) -> Self {
        self.permuted(&[1, 0])
    }

    /// The representative with `b >= c`.
    pub fn normalized(&self) -> Self {
        match self.abcd() {
            Ok((_, b, c, _)) if b < c => self.swapped(),
            _ => self.clone(),
        }
    }

    pub fn scaled(&self, t: i64) -> Self {
        QuotientMatrix { k: self.k, data: self.data.iter().map(|x| x * t).collect() }
    }

    pub fn plus_identity(&self, t: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.k {
            m[(i, i)] += t;
        }
        m
    }

    pub fn mul(&self, other: &QuotientMatrix) -> Self {
        let k = self.k;
        let mut m = QuotientMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = (0..k).map(|l| self[(i, l)] * other[(l, j)]).sum();
            }
        }
        m
    }

    /// Compact text form `r0c0,r0c1;r1c0,r1c1`.
    pub fn to_compact(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_compact(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad entry {x:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        QuotientMatrix::from_rows(rows)
    }

    /// Accepts `[[a,b],[c,d]]` (JSON) or the compact form.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let rows: Vec<Vec<i64>> = serde_json::from_str(t)?;
            QuotientMatrix::from_rows(rows)
        } else {
            QuotientMatrix::parse_compact(t)
        }
    }
}

impl Index<(usize, usize)> for QuotientMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.k + j]
    }
}

impl IndexMut<(usize, usize)> for QuotientMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.k + j]
    }
}

impl TryFrom<Vec<Vec<i64>>> for QuotientMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        QuotientMatrix::from_rows(rows)
    }
}

impl From<QuotientMatrix> for Vec<Vec<i64>> {
    fn from(m: QuotientMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.rows()).map_err(|_| fmt::Error)?)
    }
}

impl fmt::Debug for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// On-disk matrix description: `{"n": 12, "kind": "halved-even", "k": 2, "S": [[4,62],[2,64]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: u32,
    pub kind: CubeKind,
    pub k: usize,
    #[serde(rename = "S")]
    pub s: QuotientMatrix,
}

impl MatrixFile {
    pub fn new(graph: CubeGraph, s: QuotientMatrix) -> Self {
        MatrixFile { n: graph.n(), kind: graph.kind(), k: s.k(), s }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let m: MatrixFile = serde_json::from_str(text)?;
        if m.k != m.s.k() {
            return Err(Error::Shape(format!("declared k={} but S is {}x{}", m.k, m.s.k(), m.s.k())));
        }
        CubeGraph::new(m.kind, m.n)?;
        Ok(m)
    }

    pub fn graph(&self) -> Result<CubeGraph> {
        CubeGraph::new(self.kind, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub n: u32,
    pub i: u32,
    pub value: i64,
}

/// θᵢ(n) = ((n − 2i)² − n)/2, the i-th largest eigenvalue of ½H(n).
pub fn theta(n: u32, i: u32) -> Result<i64> {
    if i > n / 2 {
        return Err(Error::Index { index: i as usize, max: (n / 2) as usize });
    }
    let d = n as i64 - 2 * i as i64;
    Ok((d * d - n as i64) / 2)
}

pub fn spectrum(n: u32) -> Vec<SpectrumPoint> {
    (0..=n / 2).map(|i| SpectrumPoint { n, i, value: theta(n, i).expect("in range") }).collect()
}

/// Eigenvalue index of `value` in ½H(n), if any.
pub fn eigenvalue_index(n: u32, value: i64) -> Option<u32> {
    spectrum(n).into_iter().find(|p| p.value == value).map(|p| p.i)
}

/// `(row sum, a − c)` for a 2×2 matrix with equal row sums.
pub fn eigenvalues_2x2(s: &QuotientMatrix) -> Result<(i64, i64)> {
    let (a, b, c, d) = s.abcd()?;
    if a + b != c + d {
        return Err(Error::NotStochastic);
    }
    Ok((a + b, a - c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cond4Verdict {
    pub pass: bool,
    /// Hamming distance `i` of the first non-integral or negative S⁽ⁱ⁾.
    pub first_offending: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub n: u32,
    pub kind: CubeKind,
    pub matrix: QuotientMatrix,
    pub cond1_integrality: Verdict,
    pub cond2_proportion: Verdict,
    pub cond3_eigenvalue: Verdict,
    pub eigenvalue: Option<SpectrumPoint>,
    pub cond4_recursion: Option<Cond4Verdict>,
    /// `(|C₀|, |C₁|)` implied by `|C₀|·b = |C₁|·c`.
    pub cell_sizes: Option<(u64, u64)>,
    pub overall: bool,
}

impl AdmissibilityReport {
    fn refresh_overall(&mut self) {
        self.overall = self.cond1_integrality.pass
            && self.cond2_proportion.pass
            && self.cond3_eigenvalue.pass
            && self.cond4_recursion.as_ref().is_none_or(|c| c.pass);
    }

    pub fn passes_1_to_3(&self) -> bool {
        self.cond1_integrality.pass && self.cond2_proportion.pass && self.cond3_eigenvalue.pass
    }
}

/// `(|C₀|, |C₁|)` for a 2×2 matrix on a graph with `vertices` vertices.
pub fn cell_sizes(vertices: u64, b: i64, c: i64) -> Option<(u64, u64)> {
    if b <= 0 || c <= 0 {
        return None;
    }
    let total = (b + c) as u128;
    let v = vertices as u128;
    if !(v * c as u128).is_multiple_of(total) {
        return None;
    }
    let c0 = (v * c as u128 / total) as u64;
    Some((c0, vertices - c0))
}

/// Conditions 1–3 for a 2×2 matrix on a halved cube.
pub fn check_conditions_1_to_3(s: &QuotientMatrix, g: CubeGraph) -> Result<AdmissibilityReport> {
    let (a, b, c, d) = s.abcd()?;
    if !g.kind().is_halved() {
        return Err(Error::Shape(format!("admissibility conditions are stated for halved cubes, got {g}")));
    }
    let n = g.n();
    let degree = g.degree() as i64;
    let vertices = g.vertex_count();

    let cond1 = if [a, b, c, d].iter().any(|&x| x < 0) {
        Verdict::new(false, "negative entry")
    } else if b == 0 || c == 0 {
        Verdict::new(false, "b and c must be positive")
    } else if a + b != degree || c + d != degree {
        Verdict::new(false, format!("row sums {} and {} differ from degree {degree}", a + b, c + d))
    } else {
        Verdict::new(true, "nonnegative, b,c > 0, rows sum to degree")
    };

    let cond2 = if b <= 0 || c <= 0 {
        Verdict::new(false, "b and c must be positive")
    } else {
        let q = ((b + c) / b.gcd(&c)) as u64;
        if q.is_power_of_two() && vertices.is_multiple_of(q) {
            Verdict::new(true, format!("(b+c)/gcd(b,c) = {q} divides {vertices}"))
        } else {
            Verdict::new(false, format!("(b+c)/gcd(b,c) = {q} does not divide {vertices}"))
        }
    };

    let eigenvalue = if a - c == d - b {
        eigenvalue_index(n, a - c).map(|i| SpectrumPoint { n, i, value: a - c })
    } else {
        None
    };
    let cond3 = match &eigenvalue {
        Some(p) => Verdict::new(true, format!("a - c = {} = theta_{}({n})", p.value, p.i)),
        None => Verdict::new(false, format!("a - c = {} is not an eigenvalue of {g}", a - c)),
    };

    let mut report = AdmissibilityReport {
        n,
        kind: g.kind(),
        matrix: s.clone(),
        cond1_integrality: cond1,
        cond2_proportion: cond2,
        cond3_eigenvalue: cond3,
        eigenvalue,
        cond4_recursion: None,
        cell_sizes: if b > 0 && c > 0 { cell_sizes(vertices, b, c) } else { None },
        overall: false,
    };
    report.refresh_overall();
    Ok(report)
}

/// All four conditions.
pub fn check_admissibility(s: &QuotientMatrix, g: CubeGraph) -> Result<AdmissibilityReport> {
    let mut report = check_conditions_1_to_3(s, g)?;
    let table = recursion_table(s, g.n());
    report.cond4_recursion = Some(Cond4Verdict { pass: table.cond4_pass(), first_offending: table.first_offending });
    report.refresh_overall();
    Ok(report)
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

type RatMatrix = Vec<Vec<BigRational>>;

fn rat_mul(x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
    let k = x.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, l| acc + &x[i][l] * &y[l][j]))
                .collect()
        })
        .collect()
}

mod rational_rows {
    use num::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

/// One matrix S⁽ⁱ⁾ of the distance-layer recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceLayer {
    /// Hamming distance `i` (even).
    pub distance: u32,
    #[serde(with = "rational_rows")]
    pub entries: Vec<Vec<BigRational>>,
    pub integral: bool,
    pub nonnegative: bool,
}

impl DistanceLayer {
    /// The layer as an integer matrix, when integral.
    pub fn to_integer(&self) -> Option<QuotientMatrix> {
        if !self.integral {
            return None;
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer().to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        QuotientMatrix::from_rows(rows).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistributionTable {
    pub n: u32,
    pub base: QuotientMatrix,
    /// S⁽⁰⁾, S⁽²⁾, …, S⁽²⌊n/2⌋⁾.
    pub layers: Vec<DistanceLayer>,
    pub first_offending: Option<u32>,
}

impl WeightDistributionTable {
    pub fn cond4_pass(&self) -> bool {
        self.first_offending.is_none()
    }

    pub fn layer(&self, distance: u32) -> Option<&DistanceLayer> {
        self.layers.iter().find(|l| l.distance == distance)
    }
}

/// Solves `S·S⁽ⁱ⁾ = C(n−i+2,2)·S⁽ⁱ⁻²⁾ + i(n−i)·S⁽ⁱ⁾ + C(i+2,2)·S⁽ⁱ⁺²⁾` for
/// `S⁽ⁱ⁺²⁾`, starting from `S⁽⁰⁾ = Id`, `S⁽²⁾ = S`. Entry `[j][m]` of `S⁽ⁱ⁾`
/// counts the vertices of cell `m` at Hamming distance `i` from a vertex of
/// cell `j`.
pub fn recursion_table(s: &QuotientMatrix, n: u32) -> WeightDistributionTable {
    let k = s.k();
    let to_rat = |m: &QuotientMatrix| -> RatMatrix {
        m.rows().into_iter().map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect()).collect()
    };
    let base = to_rat(s);
    let mut mats: Vec<RatMatrix> = vec![to_rat(&QuotientMatrix::identity(k))];
    if n >= 2 {
        mats.push(base.clone());
    }
    let top = 2 * (n / 2);
    let n_i = n as i64;
    let mut i = 2u32;
    while i + 2 <= top {
        let ii = i as i64;
        let prod = rat_mul(&base, &mats[mats.len() - 1]);
        let prev = &mats[mats.len() - 2];
        let cur = &mats[mats.len() - 1];
        let back = BigRational::from_integer(binom(n_i - ii + 2, 2));
        let stay = BigRational::from_integer(BigInt::from(ii * (n_i - ii)));
        let fwd = BigRational::from_integer(binom(ii + 2, 2));
        let next: RatMatrix = (0..k)
            .map(|r| (0..k).map(|c| (&prod[r][c] - &back * &prev[r][c] - &stay * &cur[r][c]) / &fwd).collect())
            .collect();
        mats.push(next);
        i += 2;
    }
    let layers: Vec<DistanceLayer> = mats
        .into_iter()
        .enumerate()
        .map(|(idx, entries)| {
            let integral = entries.iter().flatten().all(|x| x.is_integer());
            let nonnegative = entries.iter().flatten().all(|x| !x.is_negative());
            DistanceLayer { distance: 2 * idx as u32, entries, integral, nonnegative }
        })
        .collect();
    let first_offending = layers.iter().find(|l| !(l.integral && l.nonnegative)).map(|l| l.distance);
    WeightDistributionTable { n, base: s.clone(), layers, first_offending }
}

/// Image of `[[c−1, n−c], [c, n−c−1]]` (an H(n−1) matrix with eigenvalue −1)
/// under `S = (S'² − (n−1)·Id)/2 + S'`.
///
/// The identity coefficient is `n−1`; with coefficient 1 the rows would not
/// sum to the degree of ½H(n).
pub fn thm2_forward(s_prime: &QuotientMatrix, n: u32) -> Result<QuotientMatrix> {
    let c = thm2_parameter(s_prime, n)?;
    thm2_forward_c(c, n)
}

/// [`thm2_forward`] for the parameter `c` directly.
pub fn thm2_forward_c(c: u32, n: u32) -> Result<QuotientMatrix> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::Shape(format!("minimum-eigenvalue correspondence needs even n, got {n}")));
    }
    if c == 0 || c >= n {
        return Err(Error::Shape(format!("c = {c} outside 1..{n}")));
    }
    let (c, ni) = (c as i64, n as i64);
    let sp = QuotientMatrix::two(c - 1, ni - c, c, ni - c - 1);
    let sq = sp.mul(&sp).plus_identity(-(ni - 1));
    if sq.data.iter().any(|x| x % 2 != 0) {
        return Err(Error::Shape("S'^2 - (n-1)Id has odd entries".into()));
    }
    let mut out = QuotientMatrix { k: 2, data: sq.data.iter().map(|x| x / 2).collect() };
    for (o, x) in out.data.iter_mut().zip(&sp.data) {
        *o += x;
    }
    Ok(out)
}

fn thm2_parameter(s_prime: &QuotientMatrix, n: u32) -> Result<u32> {
    let (a, b, c, d) = s_prime.abcd()?;
    let ni = n as i64;
    if c < 1 || c >= ni || a != c - 1 || b != ni - c || d != ni - c - 1 {
        return Err(Error::Shape(format!("{s_prime} is not of the form [[c-1, n-c],[c, n-c-1]] for n = {n}")));
    }
    Ok(c as u32)
}

/// The `c` with `thm2_forward_c(c, n) == s`.
pub fn thm2_inverse(s: &QuotientMatrix, n: u32) -> Result<u32> {
    let (a, _, c, _) = s.abcd()?;
    if !n.is_multiple_of(2) {
        return Err(Error::Shape(format!("minimum-eigenvalue correspondence needs even n, got {n}")));
    }
    let min = theta(n, n / 2)?;
    if a - c != min {
        return Err(Error::EigenvalueMismatch { expected: min, found: a - c });
    }
    // the (1,0) entry of the image is c'·n/2
    let twice = 2 * c;
    if twice <= 0 || twice % n as i64 != 0 {
        return Err(Error::NoPreimage);
    }
    let cp = (twice / n as i64) as u32;
    match thm2_forward_c(cp, n) {
        Ok(img) if &img == s => Ok(cp),
        _ => Err(Error::NoPreimage),
    }
}

/// All 2×2 candidates with `b >= c` and eigenvalue θᵢ(n) passing conditions
/// 1–3, optionally filtered by condition 4 and (for `i = n/2`, `n` even) by
/// membership in the image of [`thm2_forward`].
pub fn enumerate_admissible(n: u32, i: u32, apply_cond4: bool, apply_thm2_filter: bool) -> Result<Vec<AdmissibilityReport>> {
    if i == 0 || i > n / 2 {
        return Err(Error::Index { index: i as usize, max: (n / 2) as usize });
    }
    let g = CubeGraph::halved(n);
    let degree = g.degree() as i64;
    let th = theta(n, i)?;
    let mut out = Vec::new();
    for c in 1..=degree {
        let (a, b, d) = (th + c, degree - th - c, degree - c);
        if a < 0 || b <= 0 || d < 0 || b < c {
            continue;
        }
        let s = QuotientMatrix::two(a, b, c, d);
        let mut report = check_conditions_1_to_3(&s, g)?;
        if !report.passes_1_to_3() {
            continue;
        }
        if apply_thm2_filter && n.is_multiple_of(2) && i == n / 2 && thm2_inverse(&s, n).is_err() {
            continue;
        }
        let table = recursion_table(&s, n);
        report.cond4_recursion = Some(Cond4Verdict { pass: table.cond4_pass(), first_offending: table.first_offending });
        report.refresh_overall();
        if apply_cond4 && !report.overall {
            continue;
        }
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> QuotientMatrix {
        QuotientMatrix::two(a, b, c, d)
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(12, 4).unwrap(), 2);
        assert_eq!(theta(6, 2).unwrap(), -1);
        for n in 2..=24 {
            assert_eq!(theta(n, 0).unwrap(), (n * (n - 1) / 2) as i64);
            let sp = spectrum(n);
            assert!(sp.windows(2).all(|w| w[0].value > w[1].value));
        }
        assert!(matches!(theta(6, 4), Err(Error::Index { .. })));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalues_2x2(&m(4, 62, 2, 64)).unwrap(), (66, 2));
        assert_eq!(eigenvalues_2x2(&m(10, 5, 5, 10)).unwrap(), (15, 5));
        assert_eq!(eigenvalues_2x2(&m(0, 15, 1, 14)).unwrap(), (15, -1));
        assert_eq!(eigenvalues_2x2(&m(0, 15, 1, 13)), Err(Error::NotStochastic));
    }

    #[test]
    fn conditions_examples() {
        let r = check_conditions_1_to_3(&m(4, 62, 2, 64), CubeGraph::halved(12)).unwrap();
        assert!(r.passes_1_to_3());
        assert_eq!(r.cell_sizes, Some((64, 1984)));
        assert_eq!(r.eigenvalue.unwrap().i, 4);

        // (6+4)/gcd(6,4) = 5
        let r = check_conditions_1_to_3(&m(9, 6, 4, 11), CubeGraph::halved(6)).unwrap();
        assert!(r.cond1_integrality.pass);
        assert!(!r.cond2_proportion.pass);
        assert!(!r.overall);

        let r = check_conditions_1_to_3(&m(7, 21, 3, 25), CubeGraph::halved_odd(8)).unwrap();
        assert!(r.overall);
        assert_eq!(r.eigenvalue.unwrap().value, theta(8, 2).unwrap());
        assert_eq!(r.cell_sizes, Some((16, 112)));

        let r = check_conditions_1_to_3(&m(15, 0, 0, 15), CubeGraph::halved(6)).unwrap();
        assert!(!r.cond1_integrality.pass);
        let r = check_conditions_1_to_3(&m(11, 5, 5, 10), CubeGraph::halved(6)).unwrap();
        assert!(!r.cond1_integrality.pass);
    }

    #[test]
    fn example_one_recursion() {
        let t = recursion_table(&m(4, 62, 2, 64), 12);
        let target = m(-1, 496, 16, 479);
        assert_eq!(t.layer(4).unwrap().to_integer().unwrap(), target);
        assert_eq!(t.layer(8).unwrap().to_integer().unwrap(), target);
        assert_eq!(t.first_offending, Some(4));
        assert!(!t.cond4_pass());
        assert_eq!(t.layers.len(), 7);
    }

    #[test]
    fn one_by_one_recursion_gives_binomials() {
        for n in 2..=20u32 {
            let deg = (n * (n - 1) / 2) as i64;
            let t = recursion_table(&QuotientMatrix::from_rows(vec![vec![deg]]).unwrap(), n);
            for l in &t.layers {
                let expect = binom(n as i64, l.distance as i64).to_i64().unwrap();
                assert_eq!(l.to_integer().unwrap()[(0, 0)], expect);
            }
        }
    }

    #[test]
    fn recursion_rows_sum_to_sphere_sizes() {
        for n in [6u32, 8, 10, 12] {
            for i in 1..=n / 2 {
                for r in enumerate_admissible(n, i, false, false).unwrap() {
                    let t = recursion_table(&r.matrix, n);
                    for l in &t.layers {
                        let want = BigRational::from_integer(binom(n as i64, l.distance as i64));
                        for row in &l.entries {
                            let sum = row.iter().fold(BigRational::zero(), |acc, x| acc + x);
                            assert_eq!(sum, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cond4_passes_on_existing_n8_matrix() {
        assert!(recursion_table(&m(7, 21, 3, 25), 8).cond4_pass());
    }

    #[test]
    fn thm2_examples() {
        assert_eq!(thm2_forward(&m(5, 6, 6, 5), 12).unwrap(), m(30, 36, 36, 30));
        assert_eq!(thm2_forward(&m(2, 9, 3, 8), 12).unwrap(), m(12, 54, 18, 48));
        assert_eq!(thm2_forward(&m(4, 5, 5, 4), 10).unwrap(), m(20, 25, 25, 20));
        assert_eq!(thm2_inverse(&m(30, 36, 36, 30), 12).unwrap(), 6);
        assert_eq!(thm2_inverse(&m(20, 25, 25, 20), 10).unwrap(), 5);
        assert_eq!(thm2_inverse(&m(12, 16, 16, 12), 8).unwrap(), 4);
        assert_eq!(thm2_inverse(&m(1, 27, 5, 23), 8), Err(Error::NoPreimage));
        assert!(matches!(thm2_inverse(&m(7, 21, 3, 25), 8), Err(Error::EigenvalueMismatch { .. })));
        assert!(matches!(thm2_forward(&m(5, 6, 6, 4), 12), Err(Error::Shape(_))));
    }

    #[test]
    fn thm2_roundtrip_and_closed_form() {
        for n in (4..=24).step_by(2) {
            let min = theta(n, n / 2).unwrap();
            for c in 1..=n - 2 {
                let s = thm2_forward_c(c, n).unwrap();
                let (deg, eig) = eigenvalues_2x2(&s).unwrap();
                assert_eq!(deg, (n * (n - 1) / 2) as i64);
                assert_eq!(eig, min);
                assert_eq!(s[(1, 0)], (c * n / 2) as i64);
                assert_eq!(thm2_inverse(&s, n).unwrap(), c);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let got: Vec<_> = enumerate_admissible(6, 1, false, true).unwrap().into_iter().map(|r| r.matrix).collect();
        assert_eq!(got, vec![m(10, 5, 5, 10)]);
        let mut got: Vec<_> = enumerate_admissible(8, 2, false, true).unwrap().into_iter().map(|r| r.matrix).collect();
        got.sort_by_key(|s| s[(0, 0)]);
        assert_eq!(got, vec![m(7, 21, 3, 25), m(10, 18, 6, 22), m(13, 15, 9, 19), m(16, 12, 12, 16)]);
        let with4: Vec<_> = enumerate_admissible(12, 4, true, true).unwrap();
        let a: Vec<i64> = with4.iter().map(|r| r.matrix[(0, 0)]).collect();
        assert_eq!(a, (5..=34).collect::<Vec<_>>());
        for r in &with4 {
            let (a, b, c, d) = r.matrix.abcd().unwrap();
            assert_eq!((b, c, d), (66 - a, a - 2, 68 - a));
        }
    }

    #[test]
    fn enumeration_is_closed_under_swap() {
        for n in 4..=14u32 {
            let g = CubeGraph::halved(n);
            for i in 1..=n / 2 {
                for r in enumerate_admissible(n, i, false, false).unwrap() {
                    let sw = r.matrix.swapped();
                    let again = check_conditions_1_to_3(&sw, g).unwrap();
                    assert!(again.passes_1_to_3());
                    assert_eq!(sw.normalized(), r.matrix);
                }
            }
        }
    }

    #[test]
    fn matrix_text_forms() {
        let s = QuotientMatrix::parse("[[4,62],[2,64]]").unwrap();
        assert_eq!(s, m(4, 62, 2, 64));
        assert_eq!(QuotientMatrix::parse(&s.to_compact()).unwrap(), s);
        assert_eq!(s.to_string(), "[[4,62],[2,64]]");
        let f = MatrixFile::parse(r#"{"n": 12, "kind": "halved-even", "k": 2, "S": [[4,62],[2,64]]}"#).unwrap();
        assert_eq!(f.s, s);
        assert!(MatrixFile::parse(r#"{"n": 12, "kind": "halved-even", "k": 3, "S": [[4,62],[2,64]]}"#).is_err());
        assert!(QuotientMatrix::parse("[[1,2],[3]]").is_err());
    }
}
