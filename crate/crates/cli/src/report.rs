//! Deterministic CSV and JSON reports.

use std::io::Write;

use harnack_core::{Summary, VerificationRecord};
use serde_json::{json, Map, Value};

use crate::{CliError, Format};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    /// Structured value; flattened to dotted keys in CSV.
    Json(Value),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Json(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(float(*v)),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Json(v) => v.clone(),
        }
    }

    /// `(key, text)` pairs, descending into JSON objects.
    fn flatten(&self, key: &str, out: &mut Vec<(String, String)>) {
        match self {
            Cell::Json(Value::Object(map)) => {
                for (k, v) in map {
                    Cell::from_json(v).flatten(&format!("{key}.{k}"), out);
                }
            }
            Cell::Json(Value::Array(items)) => {
                for (i, v) in items.iter().enumerate() {
                    Cell::from_json(v).flatten(&format!("{key}.{i}"), out);
                }
            }
            other => out.push((key.to_string(), other.csv())),
        }
    }

    fn from_json(v: &Value) -> Cell {
        match v {
            Value::Number(n) if n.is_i64() => Cell::Int(n.as_i64().unwrap_or_default()),
            Value::Number(n) => Cell::Float(n.as_f64().unwrap_or(f64::NAN)),
            Value::Bool(b) => Cell::Bool(*b),
            Value::String(s) => Cell::Text(s.clone()),
            other => Cell::Json(other.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Value> for Cell {
    fn from(v: Value) -> Self {
        Cell::Json(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
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

/// Seventeen significant digits.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// `k=v;k=v` rendering of labelled record inputs.
pub fn inputs(record: &VerificationRecord) -> String {
    record
        .inputs
        .iter()
        .map(|(k, v)| format!("{k}={}", float(*v)))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    config: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    scalars: Vec<(String, Cell)>,
    summary: Option<Summary>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    /// Replaces the table columns, dropping any rows.
    pub fn with_columns(mut self, columns: Vec<String>) -> Self {
        self.columns = columns;
        self.rows.clear();
        self
    }

    pub fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Named value reported outside the table.
    pub fn scalar(&mut self, key: &str, value: impl Into<Cell>) {
        self.scalars.push((key.to_string(), value.into()));
    }

    pub fn summary(&mut self, summary: Summary) {
        self.summary = Some(summary);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn flat_scalars(&self) -> Vec<(String, String)> {
        let mut flat = Vec::new();
        for (k, v) in &self.scalars {
            v.flatten(k, &mut flat);
        }
        flat
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        for (k, v) in &self.config {
            writeln!(out, "# {k}={v}")?;
        }
        if self.columns.is_empty() {
            // scalar-only reports become a key,value table
            writeln!(out, "key,value")?;
            for (k, v) in self.flat_scalars() {
                writeln!(out, "{k},{v}")?;
            }
        } else {
            for (k, v) in self.flat_scalars() {
                writeln!(out, "# {k}={v}")?;
            }
            writeln!(out, "{}", self.columns.join(","))?;
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        if let Some(s) = &self.summary {
            writeln!(out, "# {s}")?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut root = Map::new();
        let config: Map<String, Value> = self.config.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        root.insert("config".into(), Value::Object(config));
        for (k, v) in &self.scalars {
            root.insert(k.clone(), v.json());
        }
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
            .collect();
        if !self.columns.is_empty() {
            root.insert("records".into(), Value::Array(records));
        }
        if let Some(s) = &self.summary {
            root.insert("summary".into(), serde_json::to_value(s)?);
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(root))?;
        writeln!(out)?;
        Ok(())
    }
}
