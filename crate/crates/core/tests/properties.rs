//! Construction outputs checked against brute-force neighbor and distance counts.

mod common;

use halfcube::code::{hadamard12, repetition, LinearCode};
use halfcube::construct::{
    build_n6_split_family, linear_partition, merge_cosets, odd_lift, radius3_partition, radius4_partition,
    restrict_from_cube, split, split_merged, thm2_transfer, times_t_cube, times_t_halved, union_disjoint,
    union_translates_radius4,
};
use halfcube::quotient::recursion_table;
use halfcube::search::{search, SearchOptions, SearchProblem};
use halfcube::verify::verify_equitable;
use halfcube::{BinaryWord, CubeGraph, Partition, QuotientMatrix};
use proptest::prelude::*;

fn w(s: &str) -> BinaryWord {
    BinaryWord::parse_binary(s).unwrap()
}

fn found(g: CubeGraph, s: QuotientMatrix) -> Partition {
    let out = search(&SearchProblem::new(g, s).unwrap()).unwrap();
    out.partition.unwrap_or_else(|| panic!("{} on {g}: {}", out.matrix, out.status.label()))
}

/// A labeled catalog of construction outputs on graphs with n <= 12.
fn constructed() -> Vec<(String, Partition)> {
    let mut out = Vec::new();
    let rep6 = repetition(6).unwrap();
    let rep8 = repetition(8).unwrap();
    let r3 = radius3_partition(&rep6).unwrap();
    out.push(("radius3 rep6".into(), r3.clone()));
    out.push(("radius4 rep8".into(), radius4_partition(&rep8).unwrap()));
    let mut codes = vec![rep8.clone()];
    for s in ["00001111", "00110011", "01010101"] {
        codes.push(rep8.translate(w(s)).unwrap());
        out.push((format!("{} translates", codes.len()), union_translates_radius4(&codes).unwrap()));
    }
    out.push(("hadamard12".into(), radius4_partition(&hadamard12()).unwrap()));
    out.push(("x2 halved".into(), times_t_halved(&r3, 2).unwrap()));
    for c in [0, 3, 7, 14] {
        let fp = build_n6_split_family(c).unwrap();
        out.push((format!("split c={c}"), split_merged(&fp).unwrap()));
        if c > 0 {
            out.push((format!("split3 c={c}"), split(&fp).unwrap()));
        }
    }
    let v = LinearCode::span(6, &[w("111111"), w("000011")]).unwrap();
    let reps = v.coset_representatives(true).unwrap();
    for t in [1, 3, 5] {
        out.push((format!("{t} cosets"), merge_cosets(&v, &reps[..t]).unwrap()));
    }
    let h4 = found(CubeGraph::full(4), QuotientMatrix::two(1, 3, 1, 3));
    out.push(("x2 cube".into(), times_t_cube(&h4, 2).unwrap()));
    let h9 = found(CubeGraph::full(9), QuotientMatrix::two(4, 5, 5, 4));
    out.push(("transfer".into(), thm2_transfer(&h9).unwrap()));
    let r = restrict_from_cube(&h9).unwrap();
    out.push(("restrict even".into(), r.even));
    out.push(("restrict odd".into(), r.odd));
    let lp = linear_partition(6, &[w("111111"), w("110000"), w("011000"), w("001100"), w("000110")]).unwrap();
    out.push(("linear".into(), lp.partition));
    out
}

#[test]
fn every_construction_reverifies_to_its_claim() {
    for (name, p) in constructed() {
        let claim = p.claimed().unwrap_or_else(|| panic!("{name}: no claim")).rows();
        assert_eq!(common::quotient(&p), Some(claim), "{name}");
    }
}

#[test]
fn distance_counts_follow_the_recursion() {
    for (name, p) in constructed() {
        if !p.graph().kind().is_halved() {
            continue;
        }
        let table = recursion_table(p.claimed().unwrap(), p.graph().n());
        for cell in 0..p.k() {
            let members = p.cell(cell);
            let stride = (members.len() / 24).max(1);
            for x in members.iter().step_by(stride) {
                let profile = common::distance_profile(&p, x.bits());
                for layer in &table.layers {
                    let want = layer.to_integer().unwrap_or_else(|| panic!("{name}: fractional layer")).rows();
                    assert_eq!(profile[layer.distance as usize], want[cell], "{name}: distance {} from {x}", layer.distance);
                }
            }
        }
    }
}

#[test]
fn merged_cosets_equal_chained_unions() {
    // extended Hamming code: (C, complement) has matrix [[0,28],[4,24]]
    let v = LinearCode::span(8, &[w("11110000"), w("11001100"), w("10101010"), w("11111111")]).unwrap();
    let reps = v.coset_representatives(true).unwrap();
    let mut acc = merge_cosets(&v, &reps[..1]).unwrap();
    for t in 2..reps.len() {
        acc = union_disjoint(&acc, &merge_cosets(&v, &reps[t - 1..t]).unwrap()).unwrap();
        let direct = merge_cosets(&v, &reps[..t]).unwrap();
        assert_eq!(acc.labels(), direct.labels(), "t = {t}");
        assert_eq!(acc.claimed(), direct.claimed(), "t = {t}");
        assert_eq!(common::quotient(&direct), Some(direct.claimed().unwrap().rows()));
    }
}

#[test]
fn odd_lift_of_every_halved_five_solution() {
    let g = CubeGraph::halved(5);
    let mut lifted = 0;
    for s in [QuotientMatrix::two(1, 9, 3, 7), QuotientMatrix::two(6, 4, 4, 6), QuotientMatrix::two(4, 6, 6, 4)] {
        let opts = SearchOptions { find_all: true, ..Default::default() };
        let out = search(&SearchProblem::with_options(g, s.clone(), opts).unwrap()).unwrap();
        for p in &out.solutions {
            let q = odd_lift(p).unwrap();
            assert_eq!(q.graph(), CubeGraph::full(5));
            let m = common::quotient(&q).unwrap_or_else(|| panic!("lift of a {s} partition is not equitable"));
            assert_eq!(m.iter().map(|r| r.iter().sum::<i64>()).collect::<Vec<_>>(), vec![5, 5]);
            lifted += 1;
        }
    }
    assert!(lifted > 0);
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    (2u32..=7, 0usize..3, any::<u64>(), 1u8..4).prop_map(|(n, kind, seed, k)| {
        let g = match kind {
            0 => CubeGraph::full(n),
            1 => CubeGraph::halved(n),
            _ => CubeGraph::halved_odd(n),
        };
        let k = k.min(g.vertex_count() as u8);
        let len = g.vertex_count() as usize;
        let mut labels: Vec<u8> = (0..len).map(|i| ((seed.rotate_left(i as u32 % 64) ^ i as u64) % k as u64) as u8).collect();
        for (i, l) in labels.iter_mut().enumerate().take(k as usize) {
            *l = i as u8;
        }
        Partition::new(g, k as usize, labels).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn verifier_agrees_with_brute_force(p in arb_partition()) {
        let v = verify_equitable(&p).unwrap();
        let brute = common::quotient(&p);
        prop_assert_eq!(v.verdict.matrix().map(|m| m.rows()), brute);
    }

    #[test]
    fn partition_files_round_trip(p in arb_partition()) {
        let q = Partition::parse_file(&p.to_file_string()).unwrap();
        prop_assert_eq!(q.labels(), p.labels());
        prop_assert_eq!(q.graph(), p.graph());
    }

    #[test]
    fn matrix_text_round_trips(a in 0i64..50, b in 0i64..50, c in 0i64..50, d in 0i64..50) {
        let s = QuotientMatrix::two(a, b, c, d);
        prop_assert_eq!(QuotientMatrix::parse(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(QuotientMatrix::parse_compact(&s.to_compact()).unwrap(), s);
    }
}
