//! Writes the 0/1 feasibility instance for an external integer solver.

use halfcube::export::{export_instance, ExportFormat};
use halfcube::search::SearchProblem;
use halfcube::{CubeGraph, QuotientMatrix};

fn main() -> halfcube::Result<()> {
    let problem = SearchProblem::new(CubeGraph::halved(6), QuotientMatrix::two(0, 15, 1, 14))?;
    print!("{}", export_instance(&problem, ExportFormat::CplexLp)?);
    Ok(())
}
