//! Writing results as JSON or CSV, with the effective configuration echoed
//! in front.

use crate::config::{CliError, CliResult};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(
            File::create(p).map_err(|e| CliError::runtime(format!("{}: {e}", p.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    })
}

/// Serializes `result` with a top-level `config` key. Objects get the key
/// merged in; anything else is wrapped as `{config, result}`.
pub fn write_json<T: Serialize>(out: &mut dyn Write, config: &Value, result: &T) -> CliResult<()> {
    let v = serde_json::to_value(result).map_err(|e| CliError::runtime(e.to_string()))?;
    let doc = match v {
        Value::Object(mut m) => {
            m.insert("config".into(), config.clone());
            Value::Object(m)
        }
        other => json!({ "config": config, "result": other }),
    };
    serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| CliError::runtime(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// CSV with a `# config: {...}` header line.
pub fn write_csv<R: Serialize>(out: &mut dyn Write, config: &Value, rows: &[R]) -> CliResult<()> {
    writeln!(out, "# config: {config}")?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::runtime(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// CSV with explicit headers for rows that the serializer cannot flatten.
pub fn write_csv_records(
    out: &mut dyn Write,
    config: &Value,
    header: &[&str],
    rows: &[Vec<String>],
) -> CliResult<()> {
    writeln!(out, "# config: {config}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    for r in rows {
        w.write_record(r)
            .map_err(|e| CliError::runtime(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
