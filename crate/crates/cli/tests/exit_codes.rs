mod common;

use std::fs;

use common::*;

#[test]
fn check_accepts_the_corpus() {
    let mut cmd = rtl2c();
    cmd.arg("check");
    for f in ["arith", "control", "loadstore", "rotate", "stw_ea", "stw_ea_store"] {
        cmd.arg(corpus().join(format!("{f}.rtl")));
    }
    let out = cmd.output().unwrap();
    assert_eq!(status(&out), 0, "{}", text(&out.stderr));
    assert!(out.stderr.is_empty());
}

#[test]
fn check_rejects_errors_with_status_one() {
    let out = rtl2c()
        .args(["check"])
        .arg(corpus().join("negative/missing_then.rtl"))
        .output()
        .unwrap();
    assert_eq!(status(&out), 1);
    let err = text(&out.stderr);
    assert!(err.contains("MISSING_THEN"), "{err}");
    assert!(err.contains("missing_then.rtl:3:14"), "{err}");
}

#[test]
fn check_reports_diagnostics_from_every_file() {
    let out = rtl2c()
        .arg("check")
        .arg(corpus().join("negative/bad_char.rtl"))
        .arg(corpus().join("negative/overwide.rtl"))
        .output()
        .unwrap();
    assert_eq!(status(&out), 1);
    let err = text(&out.stderr);
    assert!(err.contains("BAD_CHAR") && err.contains("OVERWIDE"), "{err}");
}

#[test]
fn unreadable_input_is_66() {
    let out = rtl2c().args(["check", "/nonexistent/x.rtl"]).output().unwrap();
    assert_eq!(status(&out), 66);
}

#[test]
fn usage_errors_are_64_and_help_is_0() {
    assert_eq!(status(&rtl2c().output().unwrap()), 64);
    assert_eq!(status(&rtl2c().args(["check"]).output().unwrap()), 64);
    assert_eq!(status(&rtl2c().args(["frobnicate"]).output().unwrap()), 64);
    assert_eq!(status(&rtl2c().args(["--help"]).output().unwrap()), 0);
    assert_eq!(status(&rtl2c().args(["--version"]).output().unwrap()), 0);
}

#[test]
fn emit_into_a_file_is_73() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let out = rtl2c()
        .arg("emit")
        .arg(corpus().join("stw_ea.rtl"))
        .arg("-o")
        .arg(&blocker)
        .output()
        .unwrap();
    assert_eq!(status(&out), 73, "{}", text(&out.stderr));
}

#[test]
fn emit_refuses_colliding_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    fs::create_dir(&a).unwrap();
    fs::copy(corpus().join("stw_ea.rtl"), a.join("stw_ea.rtl")).unwrap();
    let out = rtl2c()
        .arg("emit")
        .arg(corpus().join("stw_ea.rtl"))
        .arg(a.join("stw_ea.rtl"))
        .arg("-o")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(status(&out), 64);
}

#[test]
fn emit_writes_runtime_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtl2c()
        .arg("emit")
        .arg(corpus().join("stw_ea.rtl"))
        .arg("--with-runtime")
        .arg("-o")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(status(&out), 0);
    for f in ["stw_ea.c", "power_rtl_runtime.h", "rtl_harness.c"] {
        assert!(dir.path().join(f).is_file(), "{f}");
    }
    let unit = fs::read_to_string(dir.path().join("stw_ea.c")).unwrap();
    assert!(unit.contains("#include \"power_rtl_runtime.h\""));
    assert!(unit.contains("const rtl_registry_entry rtl_registry[]"));
}

#[test]
fn run_prints_post_state() {
    let mut snap: String = (0..32)
        .map(|i| {
            let v = match i {
                1 => 0x1000,
                2 => 0xAABB_CCDD_1122_3344u64,
                _ => 0,
            };
            format!("GPR{i}={v:016x}\n")
        })
        .collect();
    snap.push_str("MEM 0000000000000100 7f\nFIELD RS=2\nFIELD RA=1\nFIELD D=fffc\n");
    let mut cmd = rtl2c();
    cmd.arg("run").arg(corpus().join("loadstore.rtl")).arg("stw");
    let out = run_with_stdin(cmd, &snap);
    assert_eq!(status(&out), 0, "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    let mem: Vec<&str> = stdout.lines().filter(|l| l.starts_with("MEM")).collect();
    assert_eq!(
        mem,
        [
            "MEM 0000000000000100 7f",
            "MEM 0000000000000ffc 11",
            "MEM 0000000000000ffd 22",
            "MEM 0000000000000ffe 33",
            "MEM 0000000000000fff 44",
        ]
    );
    assert!(stdout.contains("GPR2=aabbccdd11223344\n"));
    assert!(!stdout.contains("FIELD"));
}

#[test]
fn run_reads_snapshot_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.snap");
    fs::write(&path, zero_snapshot(&[("RS", 4), ("RA", 5)])).unwrap();
    let out = rtl2c()
        .arg("run")
        .arg(corpus().join("rotate.rtl"))
        .arg("cntlzd")
        .arg("--snapshot")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(status(&out), 0);
    assert!(text(&out.stdout).contains("GPR5=0000000000000040\n"));
}

fn run_negative(name: &str, mnemonic: &str, snapshot: &str, extra: &[&str]) -> std::process::Output {
    let mut cmd = rtl2c();
    cmd.arg("run")
        .arg(corpus().join(format!("negative/{name}.rtl")))
        .arg(mnemonic)
        .args(extra);
    run_with_stdin(cmd, snapshot)
}

#[test]
fn run_status_codes() {
    let out = run_negative("unknown_mnemonic", "nope", &zero_snapshot(&[]), &[]);
    assert_eq!(status(&out), 2);

    let bad = zero_snapshot(&[("RA", 1)]) + "GPR7=zz\n";
    assert_eq!(status(&run_negative("malformed_snapshot", "ok", &bad, &[])), 3);

    let unbound = zero_snapshot(&[("RA", 1), ("RC", 2)]);
    assert_eq!(status(&run_negative("bad_binding", "bind", &unbound, &[])), 3);

    let fields = zero_snapshot(&[("RA", 1), ("RB", 2)]);
    let out = run_negative("div_by_zero", "divz", &fields, &[]);
    assert_eq!(status(&out), 4);
    assert!(text(&out.stderr).contains("DIV_BY_ZERO"));

    let out = run_negative(
        "step_limit_exceeded",
        "spin",
        &zero_snapshot(&[("RA", 0)]),
        &["--step-limit", "1000"],
    );
    assert_eq!(status(&out), 5);
}

#[test]
fn diff_without_a_compiler_is_69() {
    let out = rtl2c()
        .env("CC", "/nonexistent/cc")
        .arg("diff")
        .arg(corpus().join("stw_ea.rtl"))
        .output()
        .unwrap();
    assert_eq!(status(&out), 69, "{}", text(&out.stderr));

    let out = rtl2c()
        .arg("diff")
        .arg(corpus().join("stw_ea.rtl"))
        .args(["--toolchain-prefix", "no-such-target-"])
        .output()
        .unwrap();
    assert_eq!(status(&out), 69);
}

#[test]
fn diff_with_a_broken_compiler_is_70() {
    let out = rtl2c()
        .env("CC", "false")
        .arg("diff")
        .arg(corpus().join("stw_ea.rtl"))
        .args(["--seeds", "1"])
        .output()
        .unwrap();
    assert_eq!(status(&out), 70, "{}", text(&out.stderr));
}

#[test]
fn zero_iteration_loop_leaves_state_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("loop.rtl");
    fs::write(
        &src,
        "instruction idle(RA:5):\n    n <- 0\n    do while n > 0:\n        (RA) <- (RA) + 1\n        n <- n - 1\n",
    )
    .unwrap();
    let snap = zero_snapshot(&[("RA", 4)]).replace("GPR4=0000000000000000", "GPR4=00000000deadbeef");
    let mut cmd = rtl2c();
    cmd.arg("run").arg(&src).arg("idle");
    let out = run_with_stdin(cmd, &snap);
    assert_eq!(status(&out), 0, "{}", text(&out.stderr));
    assert_eq!(text(&out.stdout), snap.replace("FIELD RA=4\n", ""));
}
