use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

/// A library error with the file, token and computation it arose in.
#[derive(Debug, thiserror::Error)]
#[error("{}{source}", context.as_ref().map(|c| format!("{c}: ")).unwrap_or_default())]
pub struct CoreFailure {
    pub source: gemination::Error,
    pub path: Option<PathBuf>,
    pub token: Option<String>,
    pub context: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(Box<CoreFailure>),

    #[error("{message}")]
    Config { line: Option<usize>, message: String },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("audio file for token `{token}` not found at {path}")]
    MissingAudio { token: String, path: PathBuf },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    MissingInput(String),
}

impl From<gemination::Error> for CliError {
    fn from(source: gemination::Error) -> Self {
        CliError::Core(Box::new(CoreFailure { source, path: None, token: None, context: None }))
    }
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), message: e.to_string() }
    }

    /// Attaches the file being processed.
    pub fn in_file(self, file: &Path) -> Self {
        match self {
            CliError::Core(mut c) => {
                c.path = Some(file.to_path_buf());
                CliError::Core(c)
            }
            CliError::Config { line, message } => {
                CliError::Config { line, message: format!("{}: {message}", file.display()) }
            }
            other => other,
        }
    }

    pub fn for_token(self, id: &str) -> Self {
        match self {
            CliError::Core(mut c) => {
                c.token = Some(id.to_string());
                CliError::Core(c)
            }
            other => other,
        }
    }

    /// Prefixes the message with what was being computed.
    pub fn context(self, what: String) -> Self {
        match self {
            CliError::Core(mut c) => {
                c.context = Some(what);
                CliError::Core(c)
            }
            other => other,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(c) => c.source.kind(),
            CliError::Config { .. } => "config",
            CliError::Io { .. } => "io",
            CliError::MissingAudio { .. } => "missing_audio",
            CliError::Usage(_) => "usage",
            CliError::MissingInput(_) => "missing_input",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// One-line JSON diagnostic.
    pub fn diagnostic(&self) -> String {
        let mut m = Map::new();
        m.insert("error".into(), json!(self.kind()));
        m.insert("message".into(), json!(self.to_string()));
        match self {
            CliError::Core(c) => {
                if let gemination::Error::Row { row, .. } = &c.source {
                    m.insert("row".into(), json!(row));
                }
                if let Some(p) = &c.path {
                    m.insert("path".into(), json!(p.display().to_string()));
                }
                if let Some(t) = &c.token {
                    m.insert("token".into(), json!(t));
                }
            }
            CliError::Config { line: Some(l), .. } => {
                m.insert("line".into(), json!(l));
            }
            CliError::Io { path, .. } => {
                m.insert("path".into(), json!(path.display().to_string()));
            }
            CliError::MissingAudio { token, path } => {
                m.insert("token".into(), json!(token));
                m.insert("path".into(), json!(path.display().to_string()));
            }
            _ => {}
        }
        Value::Object(m).to_string()
    }
}
