use std::path::PathBuf;
use std::process::ExitStatus;

use thiserror::Error;

/// Everything that can abort a run. Recoverable conditions (unknown kinds,
/// dangling selectors, missing icons) are reported as warnings instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("`{binary}` not found on PATH")]
    MissingBinary { binary: String },

    #[error("`{command}` exited with {status}: {stderr}")]
    SubprocessFailed {
        command: String,
        status: ExitStatus,
        stderr: String,
    },

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("YAML syntax error in {origin}{at}: {message}")]
    YamlSyntax {
        origin: String,
        /// " at line L column C" when the parser reported a position.
        at: String,
        message: String,
    },

    #[error("{origin}: kind List without an `items` sequence")]
    MalformedList { origin: String },

    #[error("{origin}: document is missing {field}")]
    MissingIdentity { field: &'static str, origin: String },

    #[error("config error at `{path}`: {message}")]
    ConfigSchema { path: String, message: String },

    #[error("unsupported output extension `{extension}` (supported: {supported})")]
    UnknownFormat {
        extension: String,
        supported: &'static str,
    },

    #[error("`{engine}` exited with {status}: {stderr}")]
    RenderFailed {
        engine: String,
        status: ExitStatus,
        stderr: String,
    },
}

impl Error {
    /// Environment problems (missing binaries, failed renders) exit with 2;
    /// everything else is an input error and exits with 1.
    pub fn is_environment(&self) -> bool {
        matches!(
            self,
            Error::MissingBinary { .. } | Error::RenderFailed { .. }
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn yaml(origin: String, err: &serde_yaml::Error) -> Self {
        let at = match err.location() {
            Some(loc) => format!(" at line {} column {}", loc.line(), loc.column()),
            None => String::new(),
        };
        Error::YamlSyntax {
            origin,
            at,
            message: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
