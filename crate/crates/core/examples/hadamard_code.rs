//! The length-12 Hadamard code and its radius-4 partition of ½H(12)′.

use halfcube::code::hadamard12;
use halfcube::construct::radius4_partition;
use halfcube::verify::verify_equitable;

fn main() -> halfcube::Result<()> {
    let code = hadamard12();
    println!(
        "{} words, minimum distance {:?}, covering radius {}",
        code.len(),
        code.min_distance(),
        code.covering_radius()?
    );
    let p = radius4_partition(&code)?;
    println!("{}: {}", p.graph(), verify_equitable(&p)?.into_matrix()?);
    Ok(())
}
