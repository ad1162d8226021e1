#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn rtl2c() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rtl2c"));
    cmd.env_remove("RTL2C_TOOLCHAIN_PREFIX")
        .env_remove("RTL2C_EXEC_WRAPPER");
    cmd
}

/// Run with `stdin` piped in and collect everything.
pub fn run_with_stdin(mut cmd: Command, stdin: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

pub fn status(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

pub fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// A working C compiler, or None to skip compiler-dependent tests.
pub fn have_cc() -> bool {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(cc)
        .arg("--version")
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .is_ok_and(|s| s.success())
}

pub fn zero_snapshot(fields: &[(&str, u64)]) -> String {
    let mut s: String = (0..32).map(|i| format!("GPR{i}={:016x}\n", 0)).collect();
    for (n, v) in fields {
        s.push_str(&format!("FIELD {n}={v:x}\n"));
    }
    s
}
