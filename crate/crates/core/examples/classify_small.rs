//! Decides every admissible matrix of a small halved cube by exhaustive search.
//!
//! Usage: `cargo run --release --example classify_small -- [n] [even|odd]`.

use halfcube::search::{classify, SearchOptions};
use halfcube::CubeKind;

fn main() -> halfcube::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(6, |a| a.parse().expect("integer n"));
    let kind = match args.next().as_deref() {
        Some("odd") => CubeKind::HalvedOdd,
        _ => CubeKind::HalvedEven,
    };
    let table = classify(n, kind, false, &SearchOptions::default())?;
    for row in &table.rows {
        println!(
            "theta_{} = {:3}  {:<20} {} {}",
            row.eigen_index,
            row.eigenvalue,
            row.matrix.to_string(),
            row.outcome.status.mark(),
            row.outcome.status.label()
        );
    }
    Ok(())
}
