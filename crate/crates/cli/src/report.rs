//! Report rows shared by every subcommand, serialized as CSV or JSON.

use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub family: String,
    pub lambda_mu: f64,
    pub q: f64,
    pub k: u32,
    pub target_kind: String,
    pub target_param: String,
    pub quantity: String,
    pub tau_re: Option<f64>,
    pub tau_im: Option<f64>,
    pub bound: Option<f64>,
    pub observed_max: Option<f64>,
    pub dominated: Option<bool>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

pub fn emit(rows: &[Row], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
    }
}
