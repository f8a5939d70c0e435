//! Rendering and parsing of count tables, sequences and verification reports.
//!
//! * CSV: header `s,t,value`, LF line endings, decimal values.
//! * JSON: `{"dims": {...}, "kind": "d1", "entries": [[s, t, "value"], ...]}`.
//! * Markdown: rows printed top-down with `t` decreasing, so the grid reads
//!   like a picture of the table.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BigCount, CountMatrix, Family, TableDims};
use crate::verifier::{Calibration, IdentityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "markdown" | "md" => Ok(Self::Markdown),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDims {
    rows: usize,
    cols: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    dims: JsonDims,
    kind: String,
    entries: Vec<(usize, usize, String)>,
}

/// An extra labelled row under a Markdown table, one value per column.
#[derive(Debug, Clone)]
pub struct Footer {
    pub label: String,
    pub values: Vec<BigCount>,
}

pub fn render_table(matrix: &CountMatrix, format: OutputFormat, footer: Option<&Footer>) -> String {
    match format {
        OutputFormat::Csv => to_csv(matrix),
        OutputFormat::Json => to_json(matrix),
        OutputFormat::Markdown => to_markdown(matrix, footer),
    }
}

pub fn to_csv(matrix: &CountMatrix) -> String {
    let mut out = String::from("s,t,value\n");
    for (s, t, v) in matrix.iter() {
        let _ = writeln!(out, "{s},{t},{v}");
    }
    out
}

pub fn to_json(matrix: &CountMatrix) -> String {
    let dims = matrix.dims();
    let table = JsonTable {
        dims: JsonDims {
            rows: dims.rows(),
            cols: dims.cols(),
        },
        kind: matrix.family().kind(),
        entries: matrix.iter().map(|(s, t, v)| (s, t, v.to_string())).collect(),
    };
    let mut out = serde_json::to_string_pretty(&table).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn to_markdown(matrix: &CountMatrix, footer: Option<&Footer>) -> String {
    let dims = matrix.dims();
    let family = matrix.family();
    let mut out = String::new();
    let header: Vec<String> = (1..=dims.cols()).map(|s| s.to_string()).collect();
    let _ = writeln!(out, "| t \\ s | {} |", header.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(dims.cols()));
    for t in (1..=dims.rows()).rev() {
        let cells: Vec<String> = (1..=dims.cols())
            .map(|s| {
                if family.is_structural_zero(s, t) {
                    String::new()
                } else {
                    matrix[(s, t)].to_string()
                }
            })
            .collect();
        let _ = writeln!(out, "| {t} | {} |", cells.join(" | "));
    }
    if let Some(f) = footer {
        let cells: Vec<String> = f.values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "| {} | {} |", f.label, cells.join(" | "));
    }
    out
}

fn parse_count(raw: &str) -> Result<BigCount> {
    raw.trim()
        .parse::<BigUint>()
        .map_err(|e| Error::Parse(format!("bad count {raw:?}: {e}")))
}

fn parse_index(raw: &str) -> Result<usize> {
    raw.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad index {raw:?}: {e}")))
}

/// Parses `to_csv` output. CSV carries no kind, so the caller names it; the
/// table size is the largest index seen.
pub fn parse_csv(text: &str, family: Family) -> Result<CountMatrix> {
    let mut lines = text.lines();
    match lines.next() {
        Some("s,t,value") => {}
        other => return Err(Error::Parse(format!("expected header s,t,value, got {other:?}"))),
    }
    let mut entries = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        let [s, t, v] = fields[..] else {
            return Err(Error::Parse(format!("expected 3 fields in {line:?}")));
        };
        entries.push((parse_index(s)?, parse_index(t)?, parse_count(v)?));
    }
    let cols = entries.iter().map(|e| e.0).max().unwrap_or(0);
    let rows = entries.iter().map(|e| e.1).max().unwrap_or(0);
    CountMatrix::from_entries(TableDims::new(rows, cols)?, family, entries)
}

pub fn parse_json(text: &str) -> Result<CountMatrix> {
    let table: JsonTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dims = TableDims::new(table.dims.rows, table.dims.cols)?;
    let family = table.kind.parse()?;
    let entries = table
        .entries
        .into_iter()
        .map(|(s, t, v)| Ok((s, t, parse_count(&v)?)))
        .collect::<Result<Vec<_>>>()?;
    CountMatrix::from_entries(dims, family, entries)
}

/// A sequence listing `n -> value`. With no format, values print one per line.
pub fn render_sequence(target: &str, m: usize, values: &[BigCount], format: Option<OutputFormat>) -> String {
    let mut out = String::new();
    match format {
        None => {
            for v in values {
                let _ = writeln!(out, "{v}");
            }
        }
        Some(OutputFormat::Csv) => {
            out.push_str("n,value\n");
            for (k, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{},{v}", k + 1);
            }
        }
        Some(OutputFormat::Json) => {
            let doc = serde_json::json!({
                "target": target,
                "m": m,
                "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            out.push('\n');
        }
        Some(OutputFormat::Markdown) => {
            out.push_str("| n | value |\n|---|---|\n");
            for (k, v) in values.iter().enumerate() {
                let _ = writeln!(out, "| {} | {v} |", k + 1);
            }
        }
    }
    out
}

pub fn render_reports(reports: &[IdentityReport], calibrations: &[Calibration], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            let ok = reports.iter().all(IdentityReport::met_expectation);
            let doc = serde_json::json!({
                "all_as_expected": ok,
                "reports": reports,
                "calibrations": calibrations
                    .iter()
                    .map(|c| serde_json::json!({"calibration": c, "summary": c.summary()}))
                    .collect::<Vec<_>>(),
            });
            out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            out.push('\n');
        }
        OutputFormat::Csv => {
            out.push_str("identity,expected,verdict,cases_checked,failures,counterexample,lhs,rhs\n");
            for r in reports {
                let (point, lhs, rhs) = match &r.first_counterexample {
                    Some(c) => (c.point.to_string(), c.lhs.clone(), c.rhs.clone()),
                    None => Default::default(),
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{point},{lhs},{rhs}",
                    r.spec.id, r.spec.expected, r.verdict, r.cases_checked, r.failures
                );
            }
        }
        OutputFormat::Markdown => {
            out.push_str("| identity | expected | verdict | cases | failures | first counterexample |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in reports {
                let cx = match &r.first_counterexample {
                    Some(c) => format!("{} (lhs {}, rhs {})", c.point, c.lhs, c.rhs),
                    None => "-".into(),
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {cx} |",
                    r.spec.id, r.spec.expected, r.verdict, r.cases_checked, r.failures
                );
            }
            for c in calibrations {
                let _ = writeln!(out, "\ncalibration {}", c.summary());
            }
        }
    }
    out
}
