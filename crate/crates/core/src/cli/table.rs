//! Tabular output in CSV or JSON, and the reader for critical tables.

use std::io::{self, Read, Write};

use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(_) => Value::Null,
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    /// Run configuration echoed in the header.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { meta: Vec::new(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
            .collect();
        json!({ "config": meta, "columns": self.columns, "rows": rows })
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: u64, msg: String },
    #[error("no data rows")]
    Empty,
}

/// One row of a critical-parameter table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRow {
    pub n: usize,
    pub e_n: f64,
    pub a_n: f64,
}

/// Read the `n`, `e_n` and `a_n` columns of a CSV written by the
/// `critical` command. Lines starting with `#` are ignored.
pub fn read_critical_csv(input: &mut dyn Read) -> Result<Vec<CriticalRow>, ParseError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i as u64 + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let Some(cols) = &header else {
            for need in ["n", "e_n", "a_n"] {
                if !fields.contains(&need) {
                    return Err(ParseError::Malformed { line, msg: format!("header lacks column {need}") });
                }
            }
            header = Some(fields.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            continue;
        };
        if fields.len() != cols.len() {
            return Err(ParseError::Malformed {
                line,
                msg: format!("expected {} fields, found {}", cols.len(), fields.len()),
            });
        }
        let get = |name: &str| -> Result<&str, ParseError> {
            cols.iter()
                .position(|c| c == name)
                .map(|k| fields[k])
                .ok_or_else(|| ParseError::Malformed { line, msg: format!("missing column {name}") })
        };
        let num = |name: &str| -> Result<f64, ParseError> {
            let s = get(name)?;
            s.parse::<f64>().map_err(|_| ParseError::Malformed { line, msg: format!("bad number {s:?} in {name}") })
        };
        let n_str = get("n")?;
        let n = n_str
            .parse::<usize>()
            .map_err(|_| ParseError::Malformed { line, msg: format!("bad level {n_str:?}") })?;
        rows.push(CriticalRow { n, e_n: num("e_n")?, a_n: num("a_n")? });
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(rows)
}
