//! Diagnostic output: `file:line:col: CODE: message` lines, or one JSON
//! record per line under `--json-diagnostics`. Both go to standard error.

use std::io::{self, Write};

use rtl2c_core::diagnostics::{Diagnostic, ErrorCode};

use crate::error::{exit, CliError};

#[derive(Debug, Clone, Copy)]
pub struct Reporter {
    pub json: bool,
}

impl Reporter {
    pub fn emit(&self, diagnostics: &[Diagnostic]) {
        let stderr = io::stderr();
        let mut out = stderr.lock();
        for d in diagnostics {
            let _ = if self.json {
                let line = serde_json::to_string(&d.to_record())
                    .expect("diagnostic records always serialize");
                writeln!(out, "{line}")
            } else {
                writeln!(out, "{d}")
            };
        }
    }

    /// Report `diagnostics` and turn them into the matching exit status.
    pub fn fail(&self, diagnostics: Vec<Diagnostic>) -> CliError {
        self.emit(&diagnostics);
        CliError::Reported {
            count: diagnostics.len(),
            status: status_for(&diagnostics),
        }
    }
}

/// Exit status for a set of diagnostics: the first one with a dedicated
/// status decides, anything else is a plain failure.
pub fn status_for(diagnostics: &[Diagnostic]) -> i32 {
    diagnostics
        .iter()
        .find_map(|d| match d.code {
            ErrorCode::UnknownMnemonic => Some(exit::UNKNOWN_MNEMONIC),
            ErrorCode::MalformedSnapshot | ErrorCode::BadBinding => Some(exit::MALFORMED_INPUT),
            ErrorCode::StepLimitExceeded => Some(exit::STEP_LIMIT),
            _ => None,
        })
        .unwrap_or(exit::FAILURE)
}
