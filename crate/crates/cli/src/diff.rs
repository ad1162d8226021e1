//! Differential testing: reference interpreter versus compiled C.
//!
//! Each case is a random snapshot (GPRs uniform over 64 bits, fields uniform
//! over their declared width, memory empty) drawn from a ChaCha8 stream keyed
//! by the seed value, the file and the definition, so any single case can be
//! regenerated without replaying the others.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Stdio;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use rtl2c_core::codegen::{self, HARNESS_SOURCE, RUNTIME_HEADER, RUNTIME_HEADER_NAME};
use rtl2c_core::diagnostics::ErrorCode;
use rtl2c_core::interpreter::Interpreter;
use rtl2c_core::machine::FieldBinding;
use rtl2c_core::semantics::AnnotatedDef;
use rtl2c_core::snapshot::{first_difference, Snapshot};

use crate::commands::{load_all, read_source};
use crate::error::CliError;
use crate::report::Reporter;
use crate::toolchain::Toolchain;

/// Words of ChaCha output reserved per case; a case draws at most
/// 2 * (32 + 64) words.
const WORDS_PER_CASE: u128 = 1 << 10;

#[derive(Debug, Clone)]
pub struct DiffOptions {
    pub seeds: u64,
    pub seed_value: u64,
    pub step_limit: u64,
    /// Use this C file instead of freshly emitted code (single input only).
    pub c_unit: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    State(String),
    Fault,
    StepLimit,
    /// Harness exited with an unexpected status.
    Crashed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub case: u64,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefReport {
    pub file: String,
    pub mnemonic: String,
    pub passed: u64,
    pub failed: u64,
    /// Cases the interpreter stopped at the step limit; not comparable.
    pub skipped: u64,
    pub first_mismatch: Option<Mismatch>,
}

/// Random input snapshot for case `case` of definition `def_index` in file
/// `file_index`.
pub fn random_case(
    def: &AnnotatedDef,
    seed_value: u64,
    file_index: u32,
    def_index: u32,
    case: u64,
) -> Snapshot {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_value);
    rng.set_stream(((file_index as u64) << 32) | def_index as u64);
    rng.set_word_pos(case as u128 * WORDS_PER_CASE);
    let mut snap = Snapshot::default();
    for g in snap.gpr.iter_mut() {
        *g = rng.gen();
    }
    for f in &def.def.fields {
        let v = if f.width >= 64 {
            rng.gen()
        } else {
            rng.gen_range(0..(1u64 << f.width))
        };
        snap.fields.push((f.name.clone(), v));
    }
    snap
}

pub fn interpret(def: &AnnotatedDef, input: &Snapshot, step_limit: u64) -> Outcome {
    let binding = FieldBinding::new(&def.def, input.fields.iter().map(|(n, v)| (n.clone(), *v)))
        .expect("random cases bind every field");
    match Interpreter::with_step_limit(step_limit).execute(def, &input.to_state(), &binding) {
        Ok(exec) => Outcome::State(Snapshot::from_state(&exec.state).print()),
        Err(d) if d.code == ErrorCode::StepLimitExceeded => Outcome::StepLimit,
        Err(_) => Outcome::Fault,
    }
}

pub fn run_harness(
    toolchain: &Toolchain,
    harness: &Path,
    mnemonic: &str,
    input: &str,
) -> Result<Outcome, CliError> {
    let mut child = toolchain
        .command(harness)
        .arg(mnemonic)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    {
        let mut stdin = child.stdin.take().expect("piped stdin");
        // A harness that exits early closes the pipe; its status says why.
        let _ = stdin.write_all(input.as_bytes());
    }
    let out = child.wait_with_output()?;
    Ok(match out.status.code() {
        Some(0) => Outcome::State(String::from_utf8_lossy(&out.stdout).into_owned()),
        Some(4) => Outcome::Fault,
        _ => Outcome::Crashed(format!(
            "{}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr).trim()
        )),
    })
}

fn describe(interp: &Outcome, harness: &Outcome) -> String {
    match (interp, harness) {
        (Outcome::State(a), Outcome::State(b)) => match first_difference(a, b) {
            Some((line, l, r)) => {
                format!("snapshot line {line}: interpreter `{l}`, harness `{r}`")
            }
            None => "snapshots equal".to_string(),
        },
        (Outcome::Crashed(why), _) | (_, Outcome::Crashed(why)) => {
            format!("harness failed ({why})")
        }
        (a, b) => format!("interpreter {}, harness {}", short(a), short(b)),
    }
}

fn short(o: &Outcome) -> &'static str {
    match o {
        Outcome::State(_) => "completed",
        Outcome::Fault => "faulted",
        Outcome::StepLimit => "hit the step limit",
        Outcome::Crashed(_) => "crashed",
    }
}

/// Build a harness for `defs`, compiled from `c_unit` or freshly emitted code.
pub fn build_harness(
    toolchain: &Toolchain,
    dir: &Path,
    defs: &[AnnotatedDef],
    source_name: &str,
    c_unit: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let unit_text = match c_unit {
        Some(p) => read_source(p)?,
        None => codegen::emit_translation_unit(defs, source_name),
    };
    let write = |name: &str, text: &str| -> Result<PathBuf, CliError> {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|source| CliError::Unwritable {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    };
    write(RUNTIME_HEADER_NAME, RUNTIME_HEADER)?;
    let unit = write("unit.c", &unit_text)?;
    let harness_src = write("rtl_harness.c", HARNESS_SOURCE)?;
    let exe = dir.join("rtl_harness");
    toolchain.build(&[unit, harness_src], dir, &exe)?;
    Ok(exe)
}

pub fn diff(
    paths: &[PathBuf],
    options: &DiffOptions,
    toolchain: &Toolchain,
    reporter: Reporter,
) -> Result<Vec<DefReport>, CliError> {
    if options.c_unit.is_some() && paths.len() != 1 {
        return Err(CliError::Usage("--c-unit needs exactly one input file".into()));
    }
    let units = load_all(paths, reporter)?;
    let mut reports = Vec::new();
    for (file_index, (path, defs)) in units.iter().enumerate() {
        let dir = tempfile::tempdir()?;
        let source_name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let harness = build_harness(
            toolchain,
            dir.path(),
            defs,
            &source_name,
            options.c_unit.as_deref(),
        )?;
        for (def_index, def) in defs.iter().enumerate() {
            let cases: Vec<(u64, Outcome, Outcome, String)> = (0..options.seeds)
                .into_par_iter()
                .map(|case| {
                    let input = random_case(
                        def,
                        options.seed_value,
                        file_index as u32,
                        def_index as u32,
                        case,
                    );
                    let text = input.print();
                    let expected = interpret(def, &input, options.step_limit);
                    let actual = if expected == Outcome::StepLimit {
                        Outcome::StepLimit
                    } else {
                        run_harness(toolchain, &harness, &def.def.mnemonic, &text)?
                    };
                    Ok((case, expected, actual, text))
                })
                .collect::<Result<_, CliError>>()?;
            let mut report = DefReport {
                file: path.display().to_string(),
                mnemonic: def.def.mnemonic.clone(),
                passed: 0,
                failed: 0,
                skipped: 0,
                first_mismatch: None,
            };
            for (case, expected, actual, input) in cases {
                if expected == Outcome::StepLimit {
                    report.skipped += 1;
                } else if expected == actual {
                    report.passed += 1;
                } else {
                    report.failed += 1;
                    if report.first_mismatch.is_none() {
                        report.first_mismatch = Some(Mismatch {
                            case,
                            input,
                            detail: describe(&expected, &actual),
                        });
                    }
                }
            }
            reports.push(report);
        }
    }
    Ok(reports)
}

/// Human-readable report, one line per definition plus mismatch details.
pub fn render(reports: &[DefReport], options: &DiffOptions) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.mnemonic.len()).max().unwrap_or(0);
    let mut file = "";
    for r in reports {
        if r.file != file {
            file = &r.file;
            out.push_str(&format!("{file}\n"));
        }
        let verdict = if r.failed == 0 { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "  {:<width$}  {verdict:<8}  passed {}  failed {}  skipped {}\n",
            r.mnemonic, r.passed, r.failed, r.skipped
        ));
        if let Some(m) = &r.first_mismatch {
            out.push_str(&format!(
                "    first mismatch: case {} (--seed-value {}): {}\n",
                m.case, options.seed_value, m.detail
            ));
            for line in m.input.lines().filter(|l| !l.starts_with("GPR")) {
                out.push_str(&format!("      {line}\n"));
            }
        }
    }
    let (p, f, s) = reports.iter().fold((0, 0, 0), |(p, f, s), r| {
        (p + r.passed, f + r.failed, s + r.skipped)
    });
    out.push_str(&format!(
        "{} definitions: {p} passed, {f} failed, {s} skipped\n",
        reports.len()
    ));
    out
}
