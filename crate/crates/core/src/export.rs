//! 0/1 instances for external integer-programming solvers.
//!
//! The instance is written in CPLEX LP format. Variable `x<i>` is 1 exactly
//! when the vertex of ordinal `i` lies in cell 0. For each vertex `v`
//!
//! ```text
//! sum_{u ~ v} x_u - (a - c) x_v = c
//! ```
//!
//! holds iff `v` has `a` neighbors in cell 0 when `x_v = 1` and `c` when
//! `x_v = 0`; one cardinality row fixes `|C₀|`. With two cells the second
//! indicator is `1 - x`, so no other variables are needed.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::search::SearchProblem;

const TERMS_PER_LINE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExportFormat {
    #[default]
    CplexLp,
}

fn push_terms(out: &mut String, terms: &[(i64, usize)]) {
    for (k, &(coef, var)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if coef < 0 { '-' } else { '+' };
        let mag = coef.unsigned_abs();
        if k == 0 && coef >= 0 {
            let _ = if mag == 1 { write!(out, " x{var}") } else { write!(out, " {mag} x{var}") };
        } else if mag == 1 {
            let _ = write!(out, " {sign} x{var}");
        } else {
            let _ = write!(out, " {sign} {mag} x{var}");
        }
    }
}

/// Writes the instance; byte-identical for identical problems.
pub fn export_instance(problem: &SearchProblem, format: ExportFormat) -> Result<String> {
    let ExportFormat::CplexLp = format;
    let g = problem.graph;
    let (a, b, c, _) = problem.matrix.abcd()?;
    let (c0, _) = problem
        .cell_sizes()
        .ok_or_else(|| Error::Shape(format!("{} has no integral cell sizes on {g}", problem.matrix)))?;
    let v = g.vertex_count() as usize;
    let mut out = String::new();
    let _ = writeln!(out, "\\ equitable 2-partition of {g} with quotient matrix {}", problem.matrix);
    let _ = writeln!(out, "\\ x<i> = 1 iff vertex <i> is in cell 0; vertex <i> is the {}-bit word", g.n());
    let _ = writeln!(
        out,
        "\\ {}",
        match g.kind() {
            crate::CubeKind::Full => "with binary value i".to_string(),
            _ => "whose first n-1 bits spell i, completed by a parity bit".to_string(),
        }
    );
    let _ = writeln!(out, "\\ variables {v}, count rows {v}, cardinality rows 1, |C0| = {c0}, b = {b}");
    out.push_str("Minimize\n obj: 0 x0\nSubject To\n");
    let mut nbrs = Vec::with_capacity(g.degree() as usize);
    for o in 0..v {
        nbrs.clear();
        g.for_each_neighbor(g.bits_at(o), |u| nbrs.push(g.ordinal_of(u)));
        nbrs.sort_unstable();
        let mut terms: Vec<(i64, usize)> = nbrs.iter().map(|&u| (1, u)).collect();
        if a != c {
            let pos = terms.partition_point(|&(_, u)| u < o);
            terms.insert(pos, (c - a, o));
        }
        let _ = write!(out, " v{o}:");
        push_terms(&mut out, &terms);
        let _ = writeln!(out, " = {c}");
    }
    out.push_str(" card:");
    let all: Vec<(i64, usize)> = (0..v).map(|o| (1, o)).collect();
    push_terms(&mut out, &all);
    let _ = writeln!(out, " = {c0}");
    out.push_str("Binary\n");
    for chunk in (0..v).collect::<Vec<_>>().chunks(TERMS_PER_LINE) {
        let names: Vec<String> = chunk.iter().map(|o| format!("x{o}")).collect();
        let _ = writeln!(out, " {}", names.join(" "));
    }
    out.push_str("End\n");
    Ok(out)
}
