//! Versioned JSON reports emitted by the command-line front end.
//!
//! Every report is an object `{"schema": 1, "command": ..., "ok": ...}` with
//! either a `result` or an `error` member. Reports contain no timings, so
//! identical inputs give byte-identical files.

use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::search::{Classification, SearchOutcome};

pub const SCHEMA_VERSION: u32 = 1;

pub fn success(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA_VERSION, "command": command, "ok": true, "result": result })
}

pub fn failure(command: &str, err: &Error) -> Value {
    let mut error = json!({ "kind": err.kind(), "message": err.to_string() });
    if let Error::NotEquitable(w) = err {
        error["witness"] = serde_json::to_value(w).expect("plain struct");
    }
    json!({ "schema": SCHEMA_VERSION, "command": command, "ok": false, "error": error })
}

/// Labels as a digit string when `k <= 10`, otherwise as an array.
pub fn partition_json(p: &Partition) -> Value {
    let g = p.graph();
    let labels = if p.k() <= 10 {
        Value::String(p.labels().iter().map(|&l| (b'0' + l) as char).collect())
    } else {
        json!(p.labels())
    };
    json!({
        "graph": g.to_string(),
        "n": g.n(),
        "kind": g.kind(),
        "k": p.k(),
        "cell_sizes": p.cell_sizes(),
        "claimed": p.claimed(),
        "labels": labels,
    })
}

pub fn outcome_json(o: &SearchOutcome) -> Value {
    let mut v = json!({
        "graph": o.graph.to_string(),
        "n": o.graph.n(),
        "kind": o.graph.kind(),
        "matrix": o.matrix,
        "status": o.status,
        "symmetry": if o.symmetry { "coordinate-permutation orbits" } else { "none" },
        "stats": o.stats,
    });
    if let Some(p) = &o.partition {
        v["partition"] = partition_json(p);
    }
    if !o.solutions.is_empty() {
        v["solutions"] = Value::Array(o.solutions.iter().map(partition_json).collect());
    }
    v
}

pub fn classification_json(c: &Classification) -> Value {
    let rows: Vec<Value> = c
        .rows
        .iter()
        .map(|r| {
            json!({
                "i": r.eigen_index,
                "theta": r.eigenvalue,
                "matrix": r.matrix,
                "cond4": r.cond4,
                "mark": r.outcome.status.mark().to_string(),
                "outcome": outcome_json(&r.outcome),
            })
        })
        .collect();
    json!({ "n": c.n, "kind": c.kind, "rows": rows })
}

pub fn write(path: &Path, report: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CubeGraph, QuotientMatrix};

    #[test]
    fn envelope_shape() {
        let v = success("theta", json!([1, 2]));
        assert_eq!(v["schema"], 1);
        assert_eq!(v["ok"], true);
        let e = failure("verify", &Error::CellOverlap);
        assert_eq!(e["error"]["kind"], "cell-overlap");
    }

    #[test]
    fn partition_labels_string() {
        let p = Partition::single_cell(CubeGraph::halved(3)).unwrap().with_claim(QuotientMatrix::from_rows(vec![vec![3]]).unwrap());
        let v = partition_json(&p);
        assert_eq!(v["labels"], "0000");
        assert_eq!(v["claimed"], json!([[3]]));
    }
}
