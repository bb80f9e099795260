//! Linear-code partitions of ½H(6), unions of their cosets, and the ×t
//! product that lifts a partition of ½H(6) to ½H(6t).

use halfcube::code::LinearCode;
use halfcube::construct::{linear_partition, merge_cosets, times_t_halved};
use halfcube::verify::verify_equitable;
use halfcube::BinaryWord;

fn words(list: &[&str]) -> halfcube::Result<Vec<BinaryWord>> {
    list.iter().map(|s| BinaryWord::parse_binary(s)).collect()
}

fn main() -> halfcube::Result<()> {
    // The kernel of these rows is the repetition code {000000, 111111}.
    let lp = linear_partition(6, &words(&["111111", "110000", "011000", "001100", "000110"])?)?;
    println!("kernel of size {}: predicted {:?}", lp.code.size(), lp.report.predicted.map(|m| m.to_string()));

    let v = LinearCode::span(6, &words(&["111111", "000011"])?)?;
    let reps = v.coset_representatives(true)?;
    for t in 1..reps.len() {
        let p = merge_cosets(&v, &reps[..t])?;
        println!("{t} cosets: {}", verify_equitable(&p)?.into_matrix()?);
    }

    for t in 2..=3 {
        let q = times_t_halved(&lp.partition, t)?;
        let status = if q.graph().n() <= 16 { "verified" } else { "claimed" };
        println!("x{t} on {}: {} ({status})", q.graph(), q.claimed().expect("constructions carry a matrix"));
    }
    Ok(())
}
