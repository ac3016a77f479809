//! Aggregation of report files into CSV or markdown tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use hcube_core::report::{Bound, VerificationReport};
use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn bound_cell(b: &Bound) -> String {
    match b {
        Bound::Value(v) => v.to_string(),
        Bound::ReportedOnly => "reported-only".into(),
    }
}

fn sort_key(r: &VerificationReport) -> (String, String) {
    (r.check_id.clone(), serde_json::to_string(&r.params).expect("params serialize"))
}

/// Sorts by `(check_id, params)`; ties keep their input order.
pub fn sorted(mut reports: Vec<VerificationReport>) -> Vec<VerificationReport> {
    reports.sort_by_key(sort_key);
    reports
}

fn param_columns<'a>(reports: impl Iterator<Item = &'a VerificationReport>) -> Vec<String> {
    reports
        .flat_map(|r| r.params.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn row(r: &VerificationReport, columns: &[String]) -> Vec<String> {
    let mut out = vec![r.check_id.clone()];
    out.extend(columns.iter().map(|c| r.params.get(c).map(cell).unwrap_or_default()));
    out.push(r.observed.to_string());
    out.push(bound_cell(&r.bound));
    out.push(r.verdict.as_str().to_string());
    out
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let columns = param_columns(reports.iter());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["check_id".to_string()];
    header.extend(columns.iter().cloned());
    header.extend(["observed", "bound", "verdict"].map(String::from));
    w.write_record(&header).expect("in-memory write");
    for r in reports {
        w.write_record(row(r, &columns)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

/// One section per check, each with its own parameter columns.
pub fn to_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let mut start = 0;
    while start < reports.len() {
        let id = &reports[start].check_id;
        let end = start + reports[start..].iter().take_while(|r| &r.check_id == id).count();
        let group = &reports[start..end];
        let columns = param_columns(group.iter());
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "## {id}\n");
        let mut header: Vec<&str> = columns.iter().map(String::as_str).collect();
        header.extend(["observed", "bound", "verdict"]);
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for r in group {
            let cells = row(r, &columns);
            let _ = writeln!(out, "| {} |", cells[1..].join(" | "));
        }
        start = end;
    }
    out
}
