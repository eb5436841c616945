//! Record shape and CSV/JSON rendering.
//!
//! Column order is fixed (t, alpha, value, method, error_estimate) and all
//! numbers are printed with 17 significant digits, so every emitted value
//! re-parses to the identical double and repeat invocations are
//! byte-identical.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub t: f64,
    pub alpha: f64,
    pub value: f64,
    pub method: &'static str,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("t,alpha,value,method,error_estimate\n");
            for r in records {
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{},{:.16e}\n",
                    r.t, r.alpha, r.value, r.method, r.error_estimate
                ));
            }
            out
        }
        Format::Json => {
            let mut out =
                serde_json::to_string_pretty(records).expect("records serialize infallibly");
            out.push('\n');
            out
        }
    }
}

/// Write rendered data to the output stream or to `--out <path>`.
pub fn emit(rendered: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())?;
            lock.flush()
        }
    }
}
