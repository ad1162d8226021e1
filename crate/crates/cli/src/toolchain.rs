//! Locating and driving the C compiler that builds `rtl_harness`.
//!
//! By default the host compiler (`$CC`, else `cc`) builds a native harness.
//! With a cross prefix such as `riscv64-unknown-linux-gnu-`, `<prefix>gcc
//! -static` is used instead and the harness runs under an optional execution
//! wrapper (for example a user-mode emulator).

use std::env;
use std::ffi::OsStr;
use std::path::{Path, PathBuf};
use std::process::Command;

use crate::error::CliError;

/// Warning level every emitted unit must compile cleanly under.
pub const C_FLAGS: &[&str] = &["-std=c99", "-O1", "-Wall", "-Wextra", "-pedantic", "-Werror"];

#[derive(Debug, Clone)]
pub struct Toolchain {
    pub compiler: String,
    pub static_link: bool,
    pub exec_wrapper: Vec<String>,
}

impl Toolchain {
    pub fn resolve(prefix: Option<&str>, exec_wrapper: Option<&str>) -> Result<Self, CliError> {
        let (compiler, static_link) = match prefix.filter(|p| !p.is_empty()) {
            Some(p) => (format!("{p}gcc"), true),
            None => (
                env::var("CC").ok().filter(|c| !c.is_empty()).unwrap_or_else(|| "cc".into()),
                false,
            ),
        };
        if find_program(&compiler).is_none() {
            let hint = if static_link {
                "install the cross toolchain or fix --toolchain-prefix / RTL2C_TOOLCHAIN_PREFIX"
            } else {
                "install a C99 compiler or point $CC at one"
            };
            return Err(CliError::Unavailable(format!(
                "C compiler `{compiler}` not found on PATH; {hint}"
            )));
        }
        let exec_wrapper: Vec<String> = exec_wrapper
            .map(|w| w.split_whitespace().map(str::to_string).collect())
            .unwrap_or_default();
        if let Some(program) = exec_wrapper.first() {
            if find_program(program).is_none() {
                return Err(CliError::Unavailable(format!(
                    "execution wrapper `{program}` not found on PATH"
                )));
            }
        }
        Ok(Toolchain {
            compiler,
            static_link,
            exec_wrapper,
        })
    }

    /// Compile `sources` (with `include_dir` on the include path) into `output`.
    pub fn build(&self, sources: &[PathBuf], include_dir: &Path, output: &Path) -> Result<(), CliError> {
        let mut cmd = Command::new(&self.compiler);
        cmd.args(C_FLAGS).arg("-I").arg(include_dir);
        if self.static_link {
            cmd.arg("-static");
        }
        cmd.args(sources).arg("-o").arg(output);
        let out = cmd.output().map_err(|e| {
            CliError::Unavailable(format!("cannot run `{}`: {e}", self.compiler))
        })?;
        if out.status.success() {
            Ok(())
        } else {
            eprint!("{}", String::from_utf8_lossy(&out.stderr));
            Err(CliError::ExternalFailure {
                program: self.compiler.clone(),
                status: out.status.to_string(),
            })
        }
    }

    /// Command that runs a built executable.
    pub fn command(&self, executable: &Path) -> Command {
        match self.exec_wrapper.split_first() {
            Some((program, args)) => {
                let mut cmd = Command::new(program);
                cmd.args(args).arg(executable);
                cmd
            }
            None => Command::new(executable),
        }
    }
}

/// Resolve `program` the way a shell would: paths containing a separator are
/// taken as-is, bare names are searched on `PATH`.
pub fn find_program(program: &str) -> Option<PathBuf> {
    let candidate = Path::new(program);
    if candidate.components().count() > 1 {
        return is_executable(candidate).then(|| candidate.to_path_buf());
    }
    let path = env::var_os("PATH")?;
    env::split_paths(&path)
        .map(|dir| dir.join(OsStr::new(program)))
        .find(|p| is_executable(p))
}

#[cfg(unix)]
fn is_executable(path: &Path) -> bool {
    use std::os::unix::fs::PermissionsExt;
    path.metadata()
        .map(|m| m.is_file() && m.permissions().mode() & 0o111 != 0)
        .unwrap_or(false)
}

#[cfg(not(unix))]
fn is_executable(path: &Path) -> bool {
    path.is_file()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_programs_are_not_found() {
        assert!(find_program("definitely-not-a-real-program-rtl2c").is_none());
        assert!(find_program("/nonexistent/dir/cc").is_none());
    }

    #[test]
    fn sh_is_found() {
        assert!(find_program("sh").is_some());
    }
}
