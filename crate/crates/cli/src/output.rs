use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A command result: the full JSON record plus the flat rows that csv and
/// table output project it to.
pub struct Report {
    pub json: Value,
    pub rows: Vec<Value>,
    pub pass: bool,
}

impl Report {
    /// One row holding every field of `json` except the listed ones.
    pub fn single(json: Value, pass: bool, skip: &[&str]) -> Self {
        let mut row = json.clone();
        if let Value::Object(m) = &mut row {
            for k in skip {
                m.remove(*k);
            }
        }
        Self {
            json,
            rows: vec![row],
            pass,
        }
    }
}

/// Nested objects become dotted keys; arrays stay as values.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Column names in first-seen order, and every row's cells in that order.
fn grid(rows: &[Value]) -> (Vec<String>, Vec<Vec<String>>) {
    let flat: Vec<Vec<(String, Value)>> = rows
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", r, &mut out);
            out
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells = flat
        .iter()
        .map(|row| {
            let m: Map<String, Value> = row.iter().cloned().collect();
            columns.iter().map(|c| m.get(c).map(cell).unwrap_or_default()).collect()
        })
        .collect();
    (columns, cells)
}

pub fn render(report: &Report, format: Format) -> std::io::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let (columns, cells) = grid(&report.rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&columns)?;
            for row in cells {
                w.write_record(&row)?;
            }
            w.into_inner().map_err(|e| e.into_error())
        }
        Format::Table => {
            let (columns, cells) = grid(&report.rows);
            let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut out = Vec::new();
            for row in std::iter::once(&columns).chain(cells.iter()) {
                let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn projections() {
        let r = Report::single(json!({"a": 1, "b": {"c": true}, "w": [1, 2], "s": "x,y"}), true, &[]);
        let csv = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "a,b.c,w,s\n1,true,\"[1,2]\",\"x,y\"\n");
        let table = String::from_utf8(render(&r, Format::Table).unwrap()).unwrap();
        assert_eq!(table.lines().count(), 2);
        assert!(table.starts_with("a  b.c   w      s"));
    }
}
