//! Row-oriented reports written as CSV or JSON.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Text(String),
    Int(i64),
    Float(f64),
    Empty,
}

impl Field {
    // shortest strings that parse back to the same f64; exponent form
    // outside the range where plain decimals stay short
    fn csv(&self) -> String {
        match self {
            Field::Text(s) => s.clone(),
            Field::Int(i) => i.to_string(),
            Field::Float(v) if *v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&v.abs()) => v.to_string(),
            Field::Float(v) => format!("{v:e}"),
            Field::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Text(s) => Value::String(s.clone()),
            Field::Int(i) => Value::from(*i),
            Field::Float(v) => serde_json::Number::from_f64(*v).map_or_else(|| Value::String(v.to_string()), Value::Number),
            Field::Empty => Value::Null,
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v.into())
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Empty, Field::Float)
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Field::csv))?;
        }
        w.flush()
    }

    fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.header.iter().zip(row).map(|(k, v)| (k.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        writeln!(out)
    }

    /// Writes to `path`, or to stdout when there is none.
    pub fn write(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }
}
