use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use chainhull::Error;

use crate::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Lib(e) => match e {
                Error::Validation(_) | Error::Parse(_) | Error::Unsupported(_) => 2,
                Error::Budget { .. } => 3,
                Error::Internal(_) => 4,
            },
        }
    }
}

/// A rendered report in all three formats, plus whether it records a
/// verification failure.
pub struct Output {
    pub json: String,
    pub table: String,
    pub csv: String,
    pub failed: bool,
}

impl Output {
    pub fn emit(self, format: Format, out: Option<&Path>) -> Result<ExitCode, CliError> {
        let mut text = match format {
            Format::Json => self.json,
            Format::Table => self.table,
            Format::Csv => self.csv,
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(if self.failed { ExitCode::from(4) } else { ExitCode::SUCCESS })
    }
}

pub fn json<T: serde::Serialize>(x: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(x).map_err(|e| CliError::Lib(Error::Internal(e.to_string())))
}

pub fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let lib = |e: csv::Error| CliError::Lib(Error::Internal(e.to_string()));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(lib)?;
    for row in rows {
        w.write_record(&row).map_err(lib)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Lib(Error::Internal(e.to_string())))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}
