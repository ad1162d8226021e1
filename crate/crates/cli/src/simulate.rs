use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::process::Command;

use crate::error::CliError;
use crate::metrics::{parse_output, MetricsReport};

pub const DEFAULT_SIMULATOR: &str = "caveat";

/// Default report location: next to the executable, `<elf>.metrics.json`.
pub fn default_report_path(elf: &Path) -> PathBuf {
    let mut name = elf.file_name().unwrap_or_default().to_os_string();
    name.push(".metrics.json");
    elf.with_file_name(name)
}

/// Run `simulator` (a program plus optional arguments, whitespace separated)
/// on `elf`, parse its output and write the report to `report_path`. The
/// report is written even when the simulator fails, so its raw output is kept.
pub fn simulate(
    elf: &Path,
    simulator: &str,
    report_path: &Path,
) -> Result<MetricsReport, CliError> {
    if !elf.is_file() {
        return Err(CliError::Unreadable {
            path: elf.to_path_buf(),
            source: std::io::Error::new(ErrorKind::NotFound, "no such executable"),
        });
    }
    let mut words = simulator.split_whitespace();
    let program = words
        .next()
        .ok_or_else(|| CliError::Usage("--simulator must name a program".into()))?;
    let output = match Command::new(program).args(words).arg(elf).output() {
        Ok(o) => o,
        Err(e) if matches!(e.kind(), ErrorKind::NotFound | ErrorKind::PermissionDenied) => {
            return Err(CliError::Unavailable(format!(
                "simulator `{program}` could not be started ({e}); install it or pass --simulator"
            )))
        }
        Err(e) => return Err(e.into()),
    };

    let mut text = String::from_utf8_lossy(&output.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&output.stderr));
    let (records, raw) = parse_output(&text);
    let report = MetricsReport {
        executable: elf.display().to_string(),
        simulator: simulator.to_string(),
        exit_status: output.status.code(),
        records,
        raw,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports always serialize");
    fs::write(report_path, json + "\n").map_err(|source| CliError::Unwritable {
        path: report_path.to_path_buf(),
        source,
    })?;
    if output.status.success() {
        Ok(report)
    } else {
        Err(CliError::ExternalFailure {
            program: program.to_string(),
            status: output.status.to_string(),
        })
    }
}
