//! Lists every candidate matrix of ½H(n) for one eigenvalue, marking the
//! ones removed by the distance-layer recursion.
//!
//! Usage: `cargo run --example enumerate_candidates -- [n] [i]` (default 10 2).

use halfcube::quotient::{enumerate_admissible, theta};

fn main() -> halfcube::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(10);
    let i = args.next().unwrap_or(2);
    let candidates = enumerate_admissible(n, i, false, true)?;
    println!("theta_{i}({n}) = {}, {} candidates", theta(n, i)?, candidates.len());
    for r in candidates {
        let c4 = r.cond4_recursion.expect("enumeration evaluates the recursion");
        println!("  {}  {}", r.matrix, if c4.pass { "+" } else { "excluded" });
    }
    Ok(())
}
