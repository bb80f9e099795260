//! Fifteen equitable partitions of ½H(12) from the splitting construction,
//! plus the three-cell partition at the end of the family.

use halfcube::construct::{build_n6_split_family, split, split_merged};
use halfcube::verify::verify_equitable;

fn main() -> halfcube::Result<()> {
    for c in 0..=14 {
        let fp = build_n6_split_family(c)?;
        let p = split_merged(&fp)?;
        println!("c = {c:2}: {}", verify_equitable(&p)?.into_matrix()?);
    }
    let three = split(&build_n6_split_family(14)?)?;
    println!("three cells: {}", verify_equitable(&three)?.into_matrix()?);
    Ok(())
}
