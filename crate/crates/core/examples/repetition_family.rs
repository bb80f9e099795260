//! The radius-4 partition of the length-8 repetition code and unions of its
//! translates: one partition for each matrix of the θ₂ row of ½H(8)′.

use halfcube::code::repetition;
use halfcube::construct::{radius4_partition, union_translates_radius4};
use halfcube::verify::verify_equitable;
use halfcube::BinaryWord;

fn main() -> halfcube::Result<()> {
    let rep = repetition(8)?;
    let p = radius4_partition(&rep)?;
    println!("1 translate:  {}", verify_equitable(&p)?.into_matrix()?);

    let shifts = ["00001111", "00110011", "01010101"];
    let mut codes = vec![rep.clone()];
    for (t, s) in shifts.iter().enumerate() {
        codes.push(rep.translate(BinaryWord::parse_binary(s)?)?);
        let q = union_translates_radius4(&codes)?;
        println!("{} translates: {}", t + 2, verify_equitable(&q)?.into_matrix()?);
    }
    Ok(())
}
