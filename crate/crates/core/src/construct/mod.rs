//! Constructions of equitable partitions.
//!
//! Every construction computes its claimed quotient matrix symbolically and
//! then runs the partition through [`verify_equitable`]; up to
//! [`AUTO_VERIFY_MAX_N`] a claim that disagrees with the count is an error.
//! Larger outputs carry the claim unverified and callers can check them
//! explicitly.

mod linear;
mod split;

pub use linear::{linear_partition, merge_cosets, LinearPartition, PairSumReport};
pub use split::{build_n6_split_family, split, split_merged, FacePartition};

use crate::code::UnrestrictedCode;
use crate::error::{Error, Result};
use crate::graph::{CubeGraph, CubeKind};
use crate::partition::Partition;
use crate::quotient::{thm2_forward, thm2_inverse, QuotientMatrix};
use crate::verify::{certify, verify_equitable};
use crate::word::{low_mask, parity, BinaryWord};

/// Outputs on graphs with `n` up to this bound are always verified.
pub const AUTO_VERIFY_MAX_N: u32 = 16;

/// Attaches `claimed`, verifying it when the graph is small enough.
pub fn settle(p: Partition, claimed: QuotientMatrix) -> Result<Partition> {
    if p.graph().n() <= AUTO_VERIFY_MAX_N {
        certify(p, claimed)
    } else {
        Ok(p.with_claim(claimed))
    }
}

/// Verified matrix of an input partition.
fn matrix_of(p: &Partition) -> Result<QuotientMatrix> {
    verify_equitable(p)?.into_matrix()
}

fn require_kind(p: &Partition, halved: bool) -> Result<()> {
    if p.graph().kind().is_halved() != halved {
        let want = if halved { "a halved cube" } else { "a full cube" };
        return Err(Error::Shape(format!("expected a partition of {want}, got {}", p.graph())));
    }
    Ok(())
}

fn require_two_cells(p: &Partition) -> Result<()> {
    if p.k() != 2 {
        return Err(Error::Shape(format!("expected a 2-partition, got k = {}", p.k())));
    }
    Ok(())
}

/// Extracted matrix, or `DegenerateCell` when a cell is empty.
fn settle_extracted(p: Partition) -> Result<Partition> {
    let s = matrix_of(&p)?;
    Ok(p.with_claim(s))
}

/// Restrictions of an H(n) partition to the even and odd halves.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub even: Partition,
    pub odd: Partition,
}

/// Restricts an equitable partition of H(n) to ½H(n) and ½H(n)'.
///
/// The partition into the two bipartite halves restricts to a single cell
/// and is rejected with `DegenerateCell`.
pub fn restrict_from_cube(p: &Partition) -> Result<Restriction> {
    require_kind(p, false)?;
    matrix_of(p)?;
    let n = p.graph().n();
    let restrict = |kind| -> Result<Partition> {
        let g = CubeGraph::new(kind, n)?;
        let q = Partition::from_fn(g, p.k(), |b| p.label_of_bits(b))?;
        settle_extracted(q)
    };
    Ok(Restriction { even: restrict(CubeKind::HalvedEven)?, odd: restrict(CubeKind::HalvedOdd)? })
}

/// Lifts an equitable partition of ½H(n), n odd, to H(n) by giving
/// `w + 1̄` the label of `w`.
pub fn odd_lift(p: &Partition) -> Result<Partition> {
    require_kind(p, true)?;
    let g = p.graph();
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(Error::Parity {
            word: BinaryWord::ones(n).to_string(),
            graph: format!("{g} (the all-one word is even, so the lift would collide)"),
        });
    }
    matrix_of(p)?;
    let ones = low_mask(n);
    let full = CubeGraph::new(CubeKind::Full, n)?;
    let q = Partition::from_fn(full, p.k(), |b| {
        if g.contains_bits(b) {
            p.label_of_bits(b)
        } else {
            p.label_of_bits(b ^ ones)
        }
    })?;
    settle_extracted(q)
}

/// Maps an H(n−1) 2-partition with eigenvalue −1 to ½H(n) (n even) by
/// appending a parity bit as the last coordinate.
pub fn thm2_transfer(p: &Partition) -> Result<Partition> {
    require_kind(p, false)?;
    require_two_cells(p)?;
    let n = p.graph().n() + 1;
    if !n.is_multiple_of(2) {
        return Err(Error::Shape(format!("transfer needs H(n-1) with n even, got {}", p.graph())));
    }
    let s_prime = matrix_of(p)?;
    let (a, _, c, _) = s_prime.abcd()?;
    if a - c != -1 {
        return Err(Error::EigenvalueMismatch { expected: -1, found: a - c });
    }
    let claimed = thm2_forward(&s_prime, n)?;
    let q = Partition::from_fn(CubeGraph::halved(n), 2, |b| p.label_of_bits(b >> 1))?;
    settle(q, claimed)
}

/// Inverse of [`thm2_transfer`]: drops the last coordinate.
pub fn thm2_transfer_inverse(p: &Partition) -> Result<Partition> {
    require_kind(p, true)?;
    require_two_cells(p)?;
    let g = p.graph();
    let n = g.n();
    let s = matrix_of(p)?;
    let c = thm2_inverse(&s, n)? as i64;
    let ni = n as i64;
    let class = u64::from(g.kind() == CubeKind::HalvedOdd);
    let q = Partition::from_fn(CubeGraph::full(n - 1), 2, |u| {
        p.label_of_bits((u << 1) | (u64::from(parity(u)) ^ class))
    })?;
    settle(q, QuotientMatrix::two(c - 1, ni - c, c, ni - c - 1))
}

fn check_even_code(code: &UnrestrictedCode) -> Result<()> {
    if let Some(w) = code.words().iter().find(|w| w.parity() == 1) {
        return Err(Error::Parity { word: w.to_string(), graph: "an even-weight code".into() });
    }
    Ok(())
}

/// `(C, C⁽²⁾)` on ½H(n) for an even-weight code of covering radius 3 in H(n).
pub fn radius3_partition(code: &UnrestrictedCode) -> Result<Partition> {
    check_even_code(code)?;
    let dp = code.distance_partition()?;
    if dp.covering_radius() != 3 {
        return Err(Error::Radius { expected: 3, found: dp.covering_radius() });
    }
    let g = CubeGraph::halved(code.n());
    let q = Partition::from_fn(g, 2, |b| u8::from(dp.distance_of_bits(b) != 0))?;
    settle_extracted(q)
}

/// `(C⁽¹⁾, C⁽³⁾)` on ½H(n)' for an even-weight code of covering radius 4.
pub fn radius4_partition(code: &UnrestrictedCode) -> Result<Partition> {
    check_even_code(code)?;
    let dp = code.distance_partition()?;
    if dp.covering_radius() != 4 {
        return Err(Error::Radius { expected: 4, found: dp.covering_radius() });
    }
    let g = CubeGraph::halved_odd(code.n());
    let q = Partition::from_fn(g, 2, |b| u8::from(dp.distance_of_bits(b) != 1))?;
    settle_extracted(q)
}

/// `[[a₁+c₂, b₁−c₂], [c₁+c₂, d₁−c₂]]`: the matrix of the union of two cospectral partitions with disjoint
/// first cells.
fn union_matrix(s1: &QuotientMatrix, s2: &QuotientMatrix) -> Result<QuotientMatrix> {
    let (a1, b1, c1, d1) = s1.abcd()?;
    let (a2, _, c2, _) = s2.abcd()?;
    if a1 - c1 != a2 - c2 {
        return Err(Error::EigenvalueMismatch { expected: a1 - c1, found: a2 - c2 });
    }
    Ok(QuotientMatrix::two(a1 + c2, b1 - c2, c1 + c2, d1 - c2))
}

/// `(∪ Cᵢ⁽¹⁾, ∩ Cᵢ⁽³⁾)` on ½H(n)' for radius-4 codes whose distance-1
/// spheres are pairwise disjoint.
pub fn union_translates_radius4(codes: &[UnrestrictedCode]) -> Result<Partition> {
    let first = codes.first().ok_or(Error::EmptyCode)?;
    let n = first.n();
    let g = CubeGraph::halved_odd(n);
    let mut parts = Vec::with_capacity(codes.len());
    for code in codes {
        if code.n() != n {
            return Err(Error::GraphMismatch(format!("H({n})"), format!("H({})", code.n())));
        }
        parts.push(radius4_partition(code)?);
    }
    let mut labels = vec![1u8; g.vertex_count() as usize];
    let mut owner = vec![usize::MAX; labels.len()];
    for (i, p) in parts.iter().enumerate() {
        for (o, &l) in p.labels().iter().enumerate() {
            if l == 0 {
                if owner[o] != usize::MAX {
                    return Err(Error::TranslateCollision(owner[o], i));
                }
                owner[o] = i;
                labels[o] = 0;
            }
        }
    }
    let mut claimed = parts[0].claimed().cloned().expect("settled");
    for p in &parts[1..] {
        claimed = union_matrix(&claimed, p.claimed().expect("settled"))?;
    }
    settle(Partition::new(g, 2, labels)?, claimed)
}

/// `(C₀ ∪ P₀, C₁ ∩ P₁)` for cospectral 2-partitions with `C₀ ∩ P₀ = ∅`.
pub fn union_disjoint(pc: &Partition, pp: &Partition) -> Result<Partition> {
    if pc.graph() != pp.graph() {
        return Err(Error::GraphMismatch(pc.graph().to_string(), pp.graph().to_string()));
    }
    require_two_cells(pc)?;
    require_two_cells(pp)?;
    let s1 = matrix_of(pc)?;
    let s2 = matrix_of(pp)?;
    let claimed = union_matrix(&s1, &s2)?;
    if pc.labels().iter().zip(pp.labels()).any(|(&x, &y)| x == 0 && y == 0) {
        return Err(Error::CellOverlap);
    }
    let labels: Vec<u8> = pc.labels().iter().zip(pp.labels()).map(|(&x, &y)| u8::from(x == 1 && y == 1)).collect();
    if labels.iter().all(|&l| l == 0) {
        return Err(Error::DegenerateCell(1));
    }
    settle(Partition::new(pc.graph(), 2, labels)?, claimed)
}

fn block_sum(x: u64, n: u32, t: u32) -> u64 {
    let mask = low_mask(n);
    (0..t).fold(0, |acc, i| acc ^ ((x >> (n * i)) & mask))
}

fn check_product_len(n: u32, t: u32) -> Result<u32> {
    if t == 0 {
        return Err(Error::Shape("t must be positive".into()));
    }
    n.checked_mul(t)
        .filter(|&m| m <= crate::partition::MAX_PARTITION_N)
        .ok_or_else(|| Error::Shape(format!("t·n = {}·{n} is too large to materialize", t)))
}

/// `C⁽ᵗ⁾(x̄₁, …, x̄_t) = C(x̄₁ + … + x̄_t)` on H(tn), with matrix `tS`.
pub fn times_t_cube(p: &Partition, t: u32) -> Result<Partition> {
    require_kind(p, false)?;
    let n = p.graph().n();
    let tn = check_product_len(n, t)?;
    let s = matrix_of(p)?;
    let q = Partition::from_fn(CubeGraph::full(tn), p.k(), |x| p.label_of_bits(block_sum(x, n, t)))?;
    settle(q, s.scaled(t as i64))
}

/// The same block-sum labeling on ½H(tn) (parity preserved), with matrix
/// `t²S + n·t(t−1)/2·Id`.
pub fn times_t_halved(p: &Partition, t: u32) -> Result<Partition> {
    require_kind(p, true)?;
    let g = p.graph();
    let n = g.n();
    let tn = check_product_len(n, t)?;
    let s = matrix_of(p)?;
    let ti = t as i64;
    let claimed = s.scaled(ti * ti).plus_identity(n as i64 * ti * (ti - 1) / 2);
    let out = CubeGraph::new(g.kind(), tn)?;
    let q = Partition::from_fn(out, p.k(), |x| p.label_of_bits(block_sum(x, n, t)))?;
    settle(q, claimed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{hadamard12, repetition};
    use crate::verify::distance_count_matrices;

    fn w(s: &str) -> BinaryWord {
        BinaryWord::parse_binary(s).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> QuotientMatrix {
        QuotientMatrix::two(a, b, c, d)
    }

    #[test]
    fn restriction_of_coordinate_pair() {
        let g = CubeGraph::full(6);
        let p = Partition::from_fn(g, 2, |b| u8::from((b >> 5 & 1) != (b >> 4 & 1))).unwrap();
        assert_eq!(matrix_of(&p).unwrap(), m(4, 2, 2, 4));
        let r = restrict_from_cube(&p).unwrap();
        assert!(verify_equitable(&r.even).unwrap().verdict.is_equitable());
        assert!(verify_equitable(&r.odd).unwrap().verdict.is_equitable());
        assert_eq!(r.even.claimed().unwrap().k(), 2);
    }

    #[test]
    fn restriction_edge_cases() {
        let single = Partition::single_cell(CubeGraph::full(5)).unwrap();
        let r = restrict_from_cube(&single).unwrap();
        assert_eq!(r.even.claimed().unwrap().rows(), vec![vec![10]]);
        let bip = Partition::from_fn(CubeGraph::full(8), 2, |b| (b.count_ones() % 2) as u8).unwrap();
        assert!(matches!(restrict_from_cube(&bip), Err(Error::DegenerateCell(_))));
    }

    #[test]
    fn odd_lift_single_and_restriction_roundtrip() {
        let p = Partition::single_cell(CubeGraph::halved(5)).unwrap();
        let l = odd_lift(&p).unwrap();
        assert_eq!(l.graph(), CubeGraph::full(5));
        assert_eq!(l.k(), 1);
        assert!(matches!(odd_lift(&Partition::single_cell(CubeGraph::halved(6)).unwrap()), Err(Error::Parity { .. })));

        // H(9): cell 0 = words whose first three coordinates have even weight
        let h9 = Partition::from_fn(CubeGraph::full(9), 2, |b| ((b >> 6).count_ones() % 2) as u8).unwrap();
        let r = restrict_from_cube(&h9).unwrap();
        let lifted = odd_lift(&r.even).unwrap();
        assert!(verify_equitable(&lifted).unwrap().verdict.is_equitable());
        let back = restrict_from_cube(&lifted).unwrap();
        assert_eq!(back.even.labels(), r.even.labels());
    }

    #[test]
    fn thm2_transfer_on_small_cube() {
        let p = Partition::from_cell0(CubeGraph::full(3), [w("000"), w("111")]).unwrap();
        assert_eq!(matrix_of(&p).unwrap(), m(0, 3, 1, 2));
        let q = thm2_transfer(&p).unwrap();
        assert_eq!(q.graph(), CubeGraph::halved(4));
        assert_eq!(q.claimed().unwrap(), &m(0, 6, 2, 4));
        // brute-force count on the 8-vertex graph
        for v in q.cell(0) {
            let inside = q.cell(0).iter().filter(|u| u.distance(v) == 2).count();
            assert_eq!(inside, 0);
        }
        let back = thm2_transfer_inverse(&q).unwrap();
        assert_eq!(back.labels(), p.labels());

        let wrong = Partition::from_cell0(CubeGraph::full(3), [w("000")]).unwrap();
        assert!(thm2_transfer(&wrong).is_err());
        let eig1 = Partition::from_fn(CubeGraph::full(3), 2, |b| (b >> 2) as u8).unwrap();
        assert!(matches!(thm2_transfer(&eig1), Err(Error::EigenvalueMismatch { .. })));
    }

    #[test]
    fn radius_three_and_four() {
        let p = radius3_partition(&repetition(6).unwrap()).unwrap();
        assert_eq!(p.claimed().unwrap(), &m(0, 15, 1, 14));
        assert!(matches!(radius3_partition(&repetition(8).unwrap()), Err(Error::Radius { expected: 3, found: 4 })));
        let odd = UnrestrictedCode::new(6, vec![w("000000"), w("111110")]).unwrap();
        assert!(matches!(radius3_partition(&odd), Err(Error::Parity { .. })));

        let p = radius4_partition(&repetition(8).unwrap()).unwrap();
        assert_eq!(p.graph(), CubeGraph::halved_odd(8));
        assert_eq!(p.claimed().unwrap(), &m(7, 21, 3, 25));
        assert!(matches!(radius4_partition(&repetition(6).unwrap()), Err(Error::Radius { .. })));

        let p = radius4_partition(&hadamard12()).unwrap();
        assert_eq!(p.claimed().unwrap(), &m(11, 55, 9, 57));
    }

    fn rep8_translates(t: usize) -> Vec<UnrestrictedCode> {
        let rep = repetition(8).unwrap();
        ["00000000", "00001111", "00110011", "01010101"][..t]
            .iter()
            .map(|s| rep.translate(w(s)).unwrap())
            .collect()
    }

    #[test]
    fn repetition_translates() {
        let expect = [m(7, 21, 3, 25), m(10, 18, 6, 22), m(13, 15, 9, 19), m(16, 12, 12, 16)];
        for (t, e) in (1..=4).zip(expect) {
            let p = union_translates_radius4(&rep8_translates(t)).unwrap();
            assert_eq!(p.claimed().unwrap(), &e);
        }
        let rep = repetition(8).unwrap();
        let close = vec![rep.clone(), rep.translate(w("00000011")).unwrap()];
        assert!(matches!(union_translates_radius4(&close), Err(Error::TranslateCollision(0, 1))));
    }

    #[test]
    fn union_disjoint_matches_closed_form() {
        let g = CubeGraph::halved(6);
        let a = Partition::from_cell0(g, [w("000000"), w("111111")]).unwrap();
        let b = Partition::from_cell0(g, [w("000011"), w("111100")]).unwrap();
        let u = union_disjoint(&a, &b).unwrap();
        assert_eq!(u.claimed().unwrap(), &m(1, 14, 2, 13));
        assert!(matches!(union_disjoint(&a, &a), Err(Error::CellOverlap)));
        let other = Partition::from_cell0(CubeGraph::halved_odd(6), [w("000001"), w("111110")]).unwrap();
        assert!(matches!(union_disjoint(&a, &other), Err(Error::GraphMismatch(..))));
    }

    #[test]
    fn union_covering_everything_is_degenerate() {
        // a 2-partition and its swap: C0 ∪ P0 is the whole vertex set
        let g = CubeGraph::halved(4);
        let p = Partition::from_cell0(g, [w("0000"), w("1111"), w("0011"), w("1100")]).unwrap();
        assert_eq!(matrix_of(&p).unwrap(), m(2, 4, 4, 2));
        let q = p.relabeled(&[1, 0]).unwrap();
        assert!(matches!(union_disjoint(&p, &q), Err(Error::DegenerateCell(1))));
    }

    #[test]
    fn times_t_examples() {
        let p = Partition::from_cell0(CubeGraph::full(3), [w("000"), w("111")]).unwrap();
        let q = times_t_cube(&p, 2).unwrap();
        assert_eq!(q.claimed().unwrap(), &m(0, 6, 2, 4));
        assert_eq!(times_t_cube(&p, 1).unwrap().labels(), p.labels());
        let single = Partition::single_cell(CubeGraph::full(3)).unwrap();
        assert_eq!(times_t_cube(&single, 3).unwrap().k(), 1);

        let h = Partition::from_cell0(CubeGraph::halved(4), [w("0000"), w("1111")]).unwrap();
        let q = times_t_halved(&h, 2).unwrap();
        assert_eq!(q.graph(), CubeGraph::halved(8));
        assert_eq!(q.claimed().unwrap(), &matrix_of(&h).unwrap().scaled(4).plus_identity(4));
        let single = Partition::single_cell(CubeGraph::halved_odd(5)).unwrap();
        let q = times_t_halved(&single, 2).unwrap();
        assert_eq!(q.graph(), CubeGraph::halved_odd(10));
        assert_eq!(q.claimed().unwrap().rows(), vec![vec![45]]);
        assert_eq!(times_t_halved(&h, 1).unwrap().labels(), h.labels());
    }

    #[test]
    fn halved_product_degree_identity() {
        for n in 1..=40i64 {
            for t in 1..=10i64 {
                assert_eq!(t * t * n * (n - 1) / 2 + n * t * (t - 1) / 2, t * n * (t * n - 1) / 2);
            }
        }
    }

    #[test]
    fn constructions_agree_with_recursion() {
        let p = radius4_partition(&repetition(8).unwrap()).unwrap();
        let s = p.claimed().unwrap().clone();
        let emp = distance_count_matrices(&p).unwrap();
        let t = crate::quotient::recursion_table(&s, 8);
        for (d, e) in emp.iter().enumerate() {
            assert_eq!(&t.layer(2 * d as u32).unwrap().to_integer().unwrap(), e);
        }
    }
}
