//! Round-trips a partition through the text file format and shows the
//! witness reported for a tampered copy.

use halfcube::code::repetition;
use halfcube::construct::radius3_partition;
use halfcube::verify::{verify_equitable, Equitability};
use halfcube::Partition;

fn main() -> halfcube::Result<()> {
    let p = radius3_partition(&repetition(6)?)?;
    let text = p.to_file_string();
    print!("{text}");
    let q = Partition::parse_file(&text)?;
    println!("reparsed: {}", verify_equitable(&q)?.into_matrix()?);

    let mut labels = q.labels().to_vec();
    labels[5] ^= 1;
    let bad = Partition::new(q.graph(), 2, labels)?;
    if let Equitability::NotEquitable { witness } = verify_equitable(&bad)?.verdict {
        println!("tampered: {witness}");
    }
    Ok(())
}
