use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;

pub const TOOL: &str = "facet-strength";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wall-clock stamp; `SOURCE_DATE_EPOCH` pins it for reproducible output.
pub fn wall_clock() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(|s| UNIX_EPOCH + Duration::from_secs(s))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(now).to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub config: Value,
    pub wall_clock: String,
}

impl Metadata {
    pub fn new(config: &impl Serialize) -> Self {
        Metadata {
            tool: TOOL.into(),
            version: VERSION.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            wall_clock: wall_clock(),
        }
    }

    pub fn comment_lines(&self) -> Vec<String> {
        vec![
            format!("# tool: {} {}", self.tool, self.version),
            format!("# config: {}", self.config),
            format!("# wall-clock: {}", self.wall_clock),
        ]
    }
}

/// A float as JSON, with non-finite values spelled out.
pub fn float(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => (*b as u8).to_string(),
        other => other.to_string(),
    }
}

pub fn write_table(w: &mut dyn Write, format: Format, meta: &Metadata, table: &Table) -> Result<()> {
    match format {
        Format::Csv => {
            for line in meta.comment_lines() {
                writeln!(w, "{line}")?;
            }
            let mut out = csv::Writer::from_writer(&mut *w);
            out.write_record(&table.header)?;
            for row in &table.rows {
                out.write_record(row.iter().map(cell))?;
            }
            out.flush()?;
        }
        Format::Jsonl => {
            writeln!(w, "{}", json!({ "metadata": meta }))?;
            for row in &table.rows {
                let obj: serde_json::Map<String, Value> =
                    table.header.iter().map(|h| h.to_string()).zip(row.iter().cloned()).collect();
                writeln!(w, "{}", Value::Object(obj))?;
            }
        }
    }
    Ok(())
}

/// Write to a file, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, format: Format, meta: &Metadata, table: &Table) -> Result<()> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            let mut w = BufWriter::new(f);
            write_table(&mut w, format, meta, table)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_table(&mut w, format, meta, table)?;
        }
    }
    Ok(())
}
