//! Row tables and their CSV / JSON-lines renderings.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    /// Floats carry 17 significant digits, enough to round-trip exactly.
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            // JSON has no NaN; non-finite values travel as strings.
            Cell::Num(v) if !v.is_finite() => serde_json::Value::String(format!("{v}")),
            Cell::Num(v) => serde_json::Value::from(*v),
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush()?;
            }
            Format::JsonLines => {
                for row in &self.rows {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    serde_json::to_writer(&mut *out, &obj)?;
                    out.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }

    pub fn write_path(&self, path: &Path, format: Format) -> Result<(), CliError> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write(&mut f, format)?;
        f.flush()?;
        Ok(())
    }

    pub fn to_string(&self, format: Format) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write(&mut buf, format)?;
        Ok(String::from_utf8(buf).expect("utf-8 output"))
    }
}

/// Reads a CSV written by [`Table::write`]; numeric fields come back as
/// [`Cell::Num`], everything else as text.
pub fn read_csv(input: &mut dyn std::io::Read) -> Result<Table, CliError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(
            rec?.iter()
                .map(|f| match f.parse::<f64>() {
                    Ok(v) if f.contains(['e', '.']) || f.contains("NaN") || f.contains("inf") => Cell::Num(v),
                    Ok(v) if f.parse::<i64>().is_ok() => Cell::Int(v as i64),
                    Ok(v) => Cell::Num(v),
                    Err(_) => Cell::Text(f.to_string()),
                })
                .collect(),
        );
    }
    Ok(Table { columns, rows })
}

pub fn read_csv_path(path: &Path) -> Result<Table, CliError> {
    read_csv(&mut std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let mut t = Table::new(&["x", "n", "v", "flag"]);
        for (i, v) in [0.1, -1.0 / 3.0, 5e-324, 1.7976931348623157e308, f64::NAN]
            .iter()
            .enumerate()
        {
            t.push(vec![
                Cell::Num(i as f64 * 0.7),
                Cell::Int(i as i64),
                Cell::Num(*v),
                Cell::Text("ok".into()),
            ]);
        }
        let text = t.to_string(Format::Csv).unwrap();
        assert!(!text.contains('\r'));
        let back = read_csv(&mut text.as_bytes()).unwrap();
        assert_eq!(back.columns, t.columns);
        for (a, b) in t.rows.iter().zip(&back.rows) {
            for (x, y) in a.iter().zip(b) {
                match (x, y) {
                    (Cell::Num(p), Cell::Num(q)) => assert_eq!(p.to_bits(), q.to_bits()),
                    _ => assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn json_lines_keep_column_order() {
        let mut t = Table::new(&["z", "a"]);
        t.push(vec![Cell::Num(1.5), Cell::Num(f64::INFINITY)]);
        assert_eq!(t.to_string(Format::JsonLines).unwrap(), "{\"z\":1.5,\"a\":\"inf\"}\n");
    }
}
