use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Library(#[from] powergraph::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use powergraph::Error as E;
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Library(E::CapExceeded { .. }) => 3,
            CliError::Library(E::Internal(_)) => 1,
            CliError::Library(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Writes `content` to `out`, or stdout when absent. Files are written to a
/// temporary sibling and renamed into place.
pub fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(content.as_bytes())?;
            tmp.flush()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}

/// Serializes rows as CSV with a header.
pub fn csv_rows<T: serde::Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
