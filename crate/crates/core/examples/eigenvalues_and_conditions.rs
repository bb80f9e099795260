//! Eigenvalues of ½H(n) and the four necessary conditions on a quotient matrix.
//!
//! Run with `cargo run --example eigenvalues_and_conditions`.

use halfcube::quotient::{check_admissibility, recursion_table, spectrum};
use halfcube::{CubeGraph, QuotientMatrix};

fn main() -> halfcube::Result<()> {
    for n in [6, 8, 10, 12] {
        let values: Vec<String> = spectrum(n).iter().map(|p| p.value.to_string()).collect();
        println!("1/2H({n}): {}", values.join(", "));
    }

    // Conditions 1-3 hold but the distance-4 layer matrix has a negative entry.
    let s = QuotientMatrix::two(4, 62, 2, 64);
    let report = check_admissibility(&s, CubeGraph::halved(12))?;
    println!("\n{s}: conditions 1-3 {}, overall {}", report.passes_1_to_3(), report.overall);
    let table = recursion_table(&s, 12);
    if let Some(layer) = table.layer(4) {
        println!("S^(4) = {:?}", layer.to_integer().map(|m| m.rows()));
    }
    println!("first offending distance: {:?}", table.first_offending);
    Ok(())
}
