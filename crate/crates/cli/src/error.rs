use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses. The numbering is part of the command-line contract.
pub mod exit {
    pub const OK: i32 = 0;
    /// Diagnostics reported, or differential mismatch.
    pub const FAILURE: i32 = 1;
    pub const UNKNOWN_MNEMONIC: i32 = 2;
    /// Malformed snapshot or field binding.
    pub const MALFORMED_INPUT: i32 = 3;
    pub const RUNTIME_FAULT: i32 = 4;
    pub const STEP_LIMIT: i32 = 5;
    pub const USAGE: i32 = 64;
    pub const NO_INPUT: i32 = 66;
    /// Compiler, toolchain or simulator not available.
    pub const UNAVAILABLE: i32 = 69;
    /// External program exited unsuccessfully.
    pub const EXTERNAL_FAILURE: i32 = 70;
    pub const CANT_CREATE: i32 = 73;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Unwritable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unavailable(String),
    #[error("{program} exited with {status}")]
    ExternalFailure { program: String, status: String },
    /// Diagnostics have already been reported; only the exit status remains.
    #[error("{count} diagnostic(s) reported")]
    Reported { count: usize, status: i32 },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unreadable { .. } => exit::NO_INPUT,
            CliError::Unwritable { .. } => exit::CANT_CREATE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Unavailable(_) => exit::UNAVAILABLE,
            CliError::ExternalFailure { .. } => exit::EXTERNAL_FAILURE,
            CliError::Reported { status, .. } => *status,
            CliError::Io(_) => exit::FAILURE,
        }
    }

    /// Whether `main` still has to print the error.
    pub fn needs_message(&self) -> bool {
        !matches!(self, CliError::Reported { .. })
    }
}
