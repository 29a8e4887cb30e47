//! JSON and CSV emission.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes `full` as pretty JSON or `rows` as CSV with a header line.
pub fn emit<T, R>(out: &mut dyn Write, format: Format, full: &T, rows: &[R]) -> Result<(), CliError>
where
    T: Serialize + ?Sized,
    R: Serialize,
{
    match format {
        Format::Json => write_json(out, full),
        Format::Csv => write_csv(out, rows),
    }
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)
        .map_err(|e| CliError::Failure(format!("json: {e}")))?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| CliError::Failure(format!("csv: {e}")))?;
    }
    w.flush()?;
    Ok(())
}
