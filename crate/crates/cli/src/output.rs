use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// One command's output: a table for CSV and a structured value for JSON.
#[derive(Debug, Default)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub results: Value,
}

impl Report {
    pub fn with_header(header: &[&str]) -> Self {
        Report {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Serialize)]
struct Document<'a> {
    version: &'static str,
    command: &'a str,
    seed: u64,
    config: &'a RunConfig,
    meta: serde_json::Map<String, Value>,
    results: &'a Value,
}

pub fn render(
    cfg: &RunConfig,
    command: &str,
    report: &Report,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match cfg.format {
        Format::Json => {
            let meta = report
                .meta
                .iter()
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect();
            let doc = Document {
                version: env!("CARGO_PKG_VERSION"),
                command,
                seed: cfg.seed,
                config: cfg,
                meta,
                results: &report.results,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out).map_err(|e| CliError::Write(e.to_string()))?;
        }
        Format::Csv => {
            let head = format!(
                "# pbswanson {} {command}\n# seed: {}\n# config: {}\n",
                env!("CARGO_PKG_VERSION"),
                cfg.seed,
                serde_json::to_string(cfg)?
            );
            out.write_all(head.as_bytes())
                .map_err(|e| CliError::Write(e.to_string()))?;
            for (k, v) in &report.meta {
                writeln!(out, "# {k}: {v}").map_err(|e| CliError::Write(e.to_string()))?;
            }
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&report.header)?;
            for row in &report.rows {
                w.write_record(row)?;
            }
            w.flush().map_err(|e| CliError::Write(e.to_string()))?;
        }
    }
    Ok(())
}

pub fn write_to(
    cfg: &RunConfig,
    command: &str,
    report: &Report,
    path: Option<&Path>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|e| CliError::io(p, e))?;
            render(cfg, command, report, &mut f)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            render(cfg, command, report, &mut lock)
        }
    }
}

/// Shortest round-trip representation, locale independent; exponent form
/// outside `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
