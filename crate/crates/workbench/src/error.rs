use std::path::PathBuf;

use thiserror::Error;

/// Where in a text input a problem was found. Lines count from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: Option<String>,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}", self.line)?;
        if let Some(c) = &self.column {
            write!(f, ", column {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("{0}")]
    Usage(String),
    #[error("{at}: {message}")]
    Parse { at: Location, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<WorkbenchError>,
    },
    #[error(transparent)]
    Core(#[from] cuephrase_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("plan file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WorkbenchError>;

impl WorkbenchError {
    pub fn parse(line: usize, column: Option<&str>, message: impl Into<String>) -> Self {
        WorkbenchError::Parse {
            at: Location {
                line,
                column: column.map(str::to_string),
            },
            message: message.into(),
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        WorkbenchError::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Process exit status: 1 for usage errors, 2 for bad or unreadable
    /// data, 3 for bugs.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Usage(_) => 1,
            WorkbenchError::Internal(_) => 3,
            WorkbenchError::InFile { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| WorkbenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| WorkbenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}
