use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: Box<CliError> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] treesync_core::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for malformed input or configuration, 3 for size limits, 1 for
    /// everything else.
    pub fn exit_code(&self) -> i32 {
        use treesync_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::InFile { source, .. } => source.exit_code(),
            CliError::Core(E::SizeLimit { .. }) => 3,
            CliError::Core(
                E::InvalidGraph(_)
                | E::InvalidVertex { .. }
                | E::InvalidColoring(_)
                | E::LengthMismatch { .. }
                | E::MissingBeta(_)
                | E::MissingDegree(_)
                | E::InvalidPack(_)
                | E::InvalidArgument(_),
            ) => 2,
            _ => 1,
        }
    }

    pub(crate) fn in_file(self, path: &std::path::Path) -> CliError {
        CliError::InFile { path: path.to_path_buf(), source: Box::new(self) }
    }
}
