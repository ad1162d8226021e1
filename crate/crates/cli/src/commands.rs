//! `check`, `emit` and `run`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rtl2c_core::codegen::{self, HARNESS_SOURCE, RUNTIME_HEADER, RUNTIME_HEADER_NAME};
use rtl2c_core::diagnostics::{Diagnostic, ErrorCode};
use rtl2c_core::interpreter::Interpreter;
use rtl2c_core::lexer::SourceSpan;
use rtl2c_core::machine::FieldBinding;
use rtl2c_core::semantics::AnnotatedDef;
use rtl2c_core::snapshot::Snapshot;

use crate::error::{exit, CliError};
use crate::report::Reporter;

pub fn read_source(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Unreadable {
        path: path.to_path_buf(),
        source,
    })
}

/// Read and analyze one file. Diagnostics are returned, not reported.
pub fn load(path: &Path) -> Result<Result<Vec<AnnotatedDef>, Vec<Diagnostic>>, CliError> {
    let text = read_source(path)?;
    Ok(rtl2c_core::compile_source(&path.display().to_string(), &text))
}

/// Analyze every file, reporting all diagnostics before failing.
pub fn load_all(
    paths: &[PathBuf],
    reporter: Reporter,
) -> Result<Vec<(PathBuf, Vec<AnnotatedDef>)>, CliError> {
    let mut units = Vec::with_capacity(paths.len());
    let mut diagnostics = Vec::new();
    for path in paths {
        match load(path)? {
            Ok(defs) => units.push((path.clone(), defs)),
            Err(mut d) => diagnostics.append(&mut d),
        }
    }
    if diagnostics.is_empty() {
        Ok(units)
    } else {
        Err(reporter.fail(diagnostics))
    }
}

pub fn check(paths: &[PathBuf], reporter: Reporter) -> Result<(), CliError> {
    load_all(paths, reporter).map(|_| ())
}

/// Output file name for an input: its stem with a `.c` extension.
pub fn unit_name(path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unit".to_string());
    format!("{stem}.c")
}

pub fn emit(
    paths: &[PathBuf],
    out_dir: &Path,
    with_runtime: bool,
    reporter: Reporter,
) -> Result<Vec<PathBuf>, CliError> {
    let units = load_all(paths, reporter)?;
    let mut names: Vec<String> = units.iter().map(|(p, _)| unit_name(p)).collect();
    names.sort();
    if let Some(pair) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::Usage(format!(
            "two inputs would both be written to {}",
            pair[0]
        )));
    }
    let write = |path: PathBuf, text: &str| {
        fs::write(&path, text)
            .map(|_| path.clone())
            .map_err(|source| CliError::Unwritable { path, source })
    };
    fs::create_dir_all(out_dir).map_err(|source| CliError::Unwritable {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for (path, defs) in &units {
        let source_name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = codegen::emit_translation_unit(defs, &source_name);
        written.push(write(out_dir.join(unit_name(path)), &text)?);
    }
    if with_runtime {
        written.push(write(out_dir.join(RUNTIME_HEADER_NAME), RUNTIME_HEADER)?);
        written.push(write(out_dir.join("rtl_harness.c"), HARNESS_SOURCE)?);
    }
    Ok(written)
}

pub fn run(
    path: &Path,
    mnemonic: &str,
    snapshot: Option<&Path>,
    step_limit: u64,
    reporter: Reporter,
) -> Result<(), CliError> {
    let defs = match load(path)? {
        Ok(defs) => defs,
        Err(d) => return Err(reporter.fail(d)),
    };
    let Some(def) = defs.iter().find(|d| d.def.mnemonic == mnemonic) else {
        let span = SourceSpan::new(path.display().to_string().as_str(), 1, 1, 0);
        let d = Diagnostic::error(
            ErrorCode::UnknownMnemonic,
            span,
            format!("no instruction `{mnemonic}` in {}", path.display()),
        );
        return Err(reporter.fail(vec![d]));
    };

    let (label, text) = match snapshot {
        Some(p) => (p.display().to_string(), read_source(p)?),
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Unreadable {
                    path: PathBuf::from("<stdin>"),
                    source,
                })?;
            ("<stdin>".to_string(), text)
        }
    };
    let snap = Snapshot::parse(&label, &text).map_err(|d| reporter.fail(vec![d]))?;
    let binding = FieldBinding::new(&def.def, snap.fields.iter().map(|(n, v)| (n.clone(), *v)))
        .map_err(|d| reporter.fail(vec![d]))?;

    let result = Interpreter::with_step_limit(step_limit).execute(def, &snap.to_state(), &binding);
    match result {
        Ok(exec) => {
            let out = Snapshot::from_state(&exec.state).print();
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(out.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| CliError::Unwritable {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
        Err(d) => {
            let status = match d.code {
                ErrorCode::StepLimitExceeded => exit::STEP_LIMIT,
                _ => exit::RUNTIME_FAULT,
            };
            reporter.emit(std::slice::from_ref(&d));
            Err(CliError::Reported { count: 1, status })
        }
    }
}
