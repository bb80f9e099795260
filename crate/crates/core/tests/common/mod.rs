//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use halfcube::{CubeKind, Partition};

fn shape(p: &Partition) -> (u32, Option<u32>) {
    match p.graph().kind() {
        CubeKind::Full => (1, None),
        CubeKind::HalvedEven => (2, Some(0)),
        CubeKind::HalvedOdd => (2, Some(1)),
    }
}

/// Words of the vertex set of `p`'s graph, in increasing numeric order.
pub fn vertices(p: &Partition) -> Vec<u64> {
    let (_, parity) = shape(p);
    (0..1u64 << p.graph().n()).filter(|x| parity.is_none_or(|q| x.count_ones() % 2 == q)).collect()
}

/// Quotient matrix by counting neighbors of every vertex, or `None`.
pub fn quotient(p: &Partition) -> Option<Vec<Vec<i64>>> {
    let n = p.graph().n();
    let (step, _) = shape(p);
    let masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() == step).collect();
    let mut rows: Vec<Option<Vec<i64>>> = vec![None; p.k()];
    for x in vertices(p) {
        let mut counts = vec![0i64; p.k()];
        for m in &masks {
            counts[p.label_of_bits(x ^ m) as usize] += 1;
        }
        let own = p.label_of_bits(x) as usize;
        match &rows[own] {
            None => rows[own] = Some(counts),
            Some(r) if *r != counts => return None,
            Some(_) => {}
        }
    }
    rows.into_iter().collect()
}

/// Counts, from vertex `x`, the vertices of each cell at every Hamming
/// distance: `out[d][cell]`.
pub fn distance_profile(p: &Partition, x: u64) -> Vec<Vec<i64>> {
    let n = p.graph().n() as usize;
    let mut out = vec![vec![0i64; p.k()]; n + 1];
    for y in vertices(p) {
        out[(x ^ y).count_ones() as usize][p.label_of_bits(y) as usize] += 1;
    }
    out
}
