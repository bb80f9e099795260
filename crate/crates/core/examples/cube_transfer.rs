//! Searches H(9) for a partition with matrix [[4,5],[5,4]], maps it to ½H(10)
//! through the minimum-eigenvalue transfer, and maps it back.

use halfcube::construct::{thm2_transfer, thm2_transfer_inverse};
use halfcube::search::{search, SearchProblem};
use halfcube::{CubeGraph, QuotientMatrix};

fn main() -> halfcube::Result<()> {
    let problem = SearchProblem::new(CubeGraph::full(9), QuotientMatrix::two(4, 5, 5, 4))?;
    let outcome = search(&problem)?;
    println!("{}: {} after {} nodes", outcome.graph, outcome.status.label(), outcome.stats.nodes);
    let Some(cube) = outcome.partition else {
        return Ok(());
    };
    let halved = thm2_transfer(&cube)?;
    println!("{}: {}", halved.graph(), halved.claimed().expect("verified on construction"));
    let back = thm2_transfer_inverse(&halved)?;
    println!("round trip exact: {}", back.labels() == cube.labels());
    Ok(())
}
