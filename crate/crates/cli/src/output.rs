// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Tables rendered as CSV with comment preamble, or as JSON.
//!
//! Floats are written in scientific notation with 17 significant digits, so
//! every `f64` round-trips.

use serde_json::{Map, Number, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    /// An integer too large for `i128`, in decimal.
    Big(String),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Empty in CSV, `null` in JSON.
    Null,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Option<Value>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn with_summary(mut self, summary: Value) -> Self {
        self.summary = Some(summary);
        self
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Big(s) => s.clone(),
        Cell::Float(v) => format_float(*v),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => csv_field(s),
        Cell::Null => String::new(),
    }
}

fn number(text: &str) -> Value {
    serde_json::from_str::<Number>(text)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Int(v) => number(&v.to_string()),
        Cell::Big(s) => number(s),
        Cell::Float(v) if v.is_finite() => number(&format_float(*v)),
        Cell::Float(_) => Value::Null,
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Null => Value::Null,
    }
}

/// Rewrites every non-integer number in `v` to 17 significant digits.
pub fn normalize_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => match n.as_f64() {
            Some(f) if f.is_finite() => number(&format_float(f)),
            _ => Value::Null,
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize_floats(v))).collect()),
        other => other,
    }
}

pub fn render(table: &Table, format: Format, config: &Value) -> String {
    let version = format!("cantorlab {}", env!("CARGO_PKG_VERSION"));
    let config = normalize_floats(config.clone());
    let summary = table.summary.clone().map(normalize_floats);
    match format {
        Format::Csv => {
            let mut out = format!("# {version}\n# config: {config}\n");
            if let Some(s) = summary {
                out.push_str(&format!("# summary: {s}\n"));
            }
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let line: Vec<String> = row.iter().map(cell_text).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), cell_json(c)))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut doc = Map::new();
            doc.insert("version".into(), Value::String(version));
            doc.insert("config".into(), config);
            if let Some(s) = summary {
                doc.insert("summary".into(), s);
            }
            doc.insert(
                "columns".into(),
                Value::Array(table.columns.iter().map(|c| Value::String(c.to_string())).collect()),
            );
            doc.insert("rows".into(), Value::Array(rows));
            let mut s = serde_json::to_string(&Value::Object(doc)).expect("JSON values serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 452.123_456_789_012_3, 1e-300, -2.5e17] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(&["n", "value", "ok"]);
        t.push(vec![3u64.into(), 0.5.into(), true.into()]);
        let config = serde_json::json!({"subcommand": "x", "c": 0.05});
        let csv = render(&t, Format::Csv, &config);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# cantorlab "));
        assert!(lines[1].starts_with("# config: {"));
        assert_eq!(lines[2], "n,value,ok");
        assert_eq!(lines[3], "3,5.0000000000000000e-1,true");

        let json: Value = serde_json::from_str(&render(&t, Format::Json, &config)).unwrap();
        assert_eq!(json["config"]["subcommand"], "x");
        assert_eq!(json["rows"][0]["n"], 3);
        assert_eq!(json["rows"][0]["value"].as_f64(), Some(0.5));
    }

    #[test]
    fn quoting() {
        assert_eq!(csv_field("file:a,b"), "\"file:a,b\"");
        assert_eq!(csv_field("zero"), "zero");
    }
}
