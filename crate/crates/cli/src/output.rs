use std::io::Write;

use serde_json::{json, Value};

use cs_geometry::{Complex64, MultiIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command result in both renderings.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let flat = match &self.json {
                    Value::Array(items) => items.iter().all(|v| !v.is_array() && !v.is_object()),
                    Value::Object(_) => false,
                    _ => true,
                };
                if flat {
                    serde_json::to_writer(&mut *out, &self.json)?;
                } else {
                    serde_json::to_writer_pretty(&mut *out, &self.json)?;
                }
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

/// Adding zero maps `-0.0` to `0.0` so output never shows a signed zero.
fn clean(x: f64) -> f64 {
    x + 0.0
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": clean(z.re), "im": clean(z.im) })
}

pub fn label_json(idx: &MultiIndex) -> Value {
    json!(idx.occupations())
}

pub fn label_text(idx: &MultiIndex) -> String {
    idx.occupations()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn num(x: f64) -> String {
    clean(x).to_string()
}

pub fn matrix_json(m: &nalgebra::DMatrix<f64>) -> Value {
    json!((0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| clean(m[(i, j)])).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// `row,col,value` rows of a real matrix.
pub fn matrix_rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            rows.push(vec![i.to_string(), j.to_string(), num(m[(i, j)])]);
        }
    }
    rows
}
