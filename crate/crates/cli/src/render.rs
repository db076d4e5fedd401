//! Plain-text tables and JSON fragments shared by the commands.

use serde_json::{json, Value};
use timely_core::{Bound, CanonicalForm, DistanceMatrix, Schedule, UnsatReason};

/// Lays out `rows` in columns: the first column left-aligned, the rest
/// right-aligned, separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                line.push_str(&format!("{cell:<w$}", w = widths[0]));
            } else {
                line.push_str(&format!("  {cell:>w$}", w = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_table(actions: &[String], matrix: &DistanceMatrix) -> String {
    let mut rows = vec![std::iter::once(String::new()).chain(actions.iter().cloned()).collect::<Vec<_>>()];
    for (i, name) in actions.iter().enumerate() {
        let mut row = vec![name.clone()];
        row.extend(matrix.row(i).iter().map(ToString::to_string));
        rows.push(row);
    }
    columns(&rows)
}

pub fn schedule_table(schedule: &Schedule) -> String {
    let rows: Vec<Vec<String>> = schedule.iter().map(|(a, t)| vec![a.to_string(), t.to_string()]).collect();
    columns(&rows)
}

pub fn bound_json(b: &Bound) -> Value {
    Value::String(b.to_string())
}

pub fn matrix_json(matrix: &DistanceMatrix) -> Value {
    Value::Array(
        matrix
            .rows()
            .map(|row| Value::Array(row.iter().map(bound_json).collect()))
            .collect(),
    )
}

pub fn unsat_reason_text(form: &CanonicalForm, reason: &UnsatReason) -> String {
    let names = form.actions();
    match reason {
        UnsatReason::NegInfEntry { from, to } => format!("bound -inf on ({},{})", names[*from], names[*to]),
        UnsatReason::NegativeCycle(w) => {
            let path: Vec<&str> = w.cycle.iter().chain(w.cycle.first()).map(|&v| names[v].as_str()).collect();
            format!("cycle {} weight {}", path.join("→"), w.total_weight)
        }
    }
}

pub fn unsat_reason_json(form: &CanonicalForm, reason: &UnsatReason) -> Value {
    let names = form.actions();
    match reason {
        UnsatReason::NegInfEntry { from, to } => json!({
            "kind": "neg_inf_entry",
            "from": names[*from],
            "to": names[*to],
        }),
        UnsatReason::NegativeCycle(w) => json!({
            "kind": "negative_cycle",
            "cycle": w.cycle.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
            "total_weight": w.total_weight.to_string(),
        }),
    }
}
