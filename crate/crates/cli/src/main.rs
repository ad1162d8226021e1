//! `rtl2c`: check, emit, run and differentially test Power ISA RTL.

mod commands;
mod diff;
mod error;
mod metrics;
mod report;
mod simulate;
mod toolchain;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rtl2c_core::interpreter::DEFAULT_STEP_LIMIT;

use crate::error::{exit, CliError};
use crate::report::Reporter;

#[derive(Debug, Parser)]
#[command(name = "rtl2c", version, about = "Power ISA RTL pseudo-code to C99 transpiler")]
struct Cli {
    /// Print diagnostics as JSON Lines records on standard error.
    #[arg(long, global = true)]
    json_diagnostics: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and analyze RTL files; exit 0 iff there are no errors.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Emit one C translation unit per input file.
    Emit {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(short = 'o', long = "out-dir", default_value = ".")]
        out_dir: PathBuf,
        /// Also write power_rtl_runtime.h and rtl_harness.c.
        #[arg(long)]
        with_runtime: bool,
    },
    /// Execute one instruction in the reference interpreter.
    Run {
        path: PathBuf,
        mnemonic: String,
        /// Input snapshot file; standard input when absent.
        #[arg(long)]
        snapshot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STEP_LIMIT)]
        step_limit: u64,
    },
    /// Compare the interpreter with the compiled C on random inputs.
    Diff {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Random cases per definition.
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed_value: u64,
        #[arg(long, default_value_t = DEFAULT_STEP_LIMIT)]
        step_limit: u64,
        /// Cross-toolchain prefix, e.g. `riscv64-unknown-linux-gnu-`.
        #[arg(long, env = "RTL2C_TOOLCHAIN_PREFIX")]
        toolchain_prefix: Option<String>,
        /// Program that runs cross-built harnesses, e.g. `qemu-riscv64`.
        #[arg(long, env = "RTL2C_EXEC_WRAPPER")]
        exec_wrapper: Option<String>,
        /// Test this C unit instead of freshly emitted code.
        #[arg(long)]
        c_unit: Option<PathBuf>,
        /// Also write the per-definition report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run an executable under the performance simulator and collect metrics.
    Simulate {
        elf: PathBuf,
        #[arg(long, default_value = simulate::DEFAULT_SIMULATOR)]
        simulator: String,
        /// Report file; defaults to `<elf>.metrics.json`.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let reporter = Reporter {
        json: cli.json_diagnostics,
    };
    match cli.command {
        Command::Check { paths } => commands::check(&paths, reporter),
        Command::Emit {
            paths,
            out_dir,
            with_runtime,
        } => commands::emit(&paths, &out_dir, with_runtime, reporter).map(|_| ()),
        Command::Run {
            path,
            mnemonic,
            snapshot,
            step_limit,
        } => commands::run(&path, &mnemonic, snapshot.as_deref(), step_limit, reporter),
        Command::Diff {
            paths,
            seeds,
            seed_value,
            step_limit,
            toolchain_prefix,
            exec_wrapper,
            c_unit,
            report,
        } => {
            let toolchain = toolchain::Toolchain::resolve(
                toolchain_prefix.as_deref(),
                exec_wrapper.as_deref(),
            )?;
            let options = diff::DiffOptions {
                seeds,
                seed_value,
                step_limit,
                c_unit,
            };
            let reports = diff::diff(&paths, &options, &toolchain, reporter)?;
            print!("{}", diff::render(&reports, &options));
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
                std::fs::write(&path, json + "\n")
                    .map_err(|source| CliError::Unwritable { path, source })?;
            }
            let failed: u64 = reports.iter().map(|r| r.failed).sum();
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Reported {
                    count: failed as usize,
                    status: exit::FAILURE,
                })
            }
        }
        Command::Simulate {
            elf,
            simulator,
            out,
        } => {
            let out = out.unwrap_or_else(|| simulate::default_report_path(&elf));
            let report = simulate::simulate(&elf, &simulator, &out)?;
            println!(
                "{}: {} records, {} raw lines -> {}",
                elf.display(),
                report.records.len(),
                report.raw.len(),
                out.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            if e.needs_message() {
                eprintln!("rtl2c: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
