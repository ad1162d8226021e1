//! Locating corpus files and reading the `# key: value` headers of the
//! negative corpus.

use std::path::{Path, PathBuf};

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Positive corpus files, sorted by name.
pub fn positive_files() -> Vec<PathBuf> {
    rtl_files(&root())
}

pub fn negative_files() -> Vec<PathBuf> {
    rtl_files(&root().join("negative"))
}

fn rtl_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "rtl"))
        .collect();
    files.sort();
    files
}

#[derive(Debug, Clone)]
pub struct Expectation {
    pub path: PathBuf,
    pub code: String,
    pub line: u32,
    pub column: u32,
    /// Set for run-time errors: the mnemonic to execute.
    pub run: Option<String>,
    pub fields: Vec<(String, u64)>,
    pub step_limit: Option<u64>,
    pub snapshot_append: Option<String>,
}

impl Expectation {
    pub fn load(path: &Path) -> Expectation {
        let text = std::fs::read_to_string(path).unwrap();
        let header = |key: &str| {
            text.lines()
                .filter_map(|l| l.strip_prefix("# "))
                .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(':')))
                .map(|v| v.trim().to_string())
        };
        let expect = header("expect").unwrap_or_else(|| panic!("{}: no expect header", path.display()));
        let (code, pos) = expect.split_once(' ').unwrap();
        let (line, column) = pos.split_once(':').unwrap();
        let fields = header("fields")
            .map(|f| {
                f.split_whitespace()
                    .map(|kv| {
                        let (k, v) = kv.split_once('=').unwrap();
                        (k.to_string(), v.parse().unwrap())
                    })
                    .collect()
            })
            .unwrap_or_default();
        Expectation {
            path: path.to_path_buf(),
            code: code.to_string(),
            line: line.parse().unwrap(),
            column: column.parse().unwrap(),
            run: header("run"),
            fields,
            step_limit: header("step-limit").map(|s| s.parse().unwrap()),
            snapshot_append: header("snapshot-append"),
        }
    }

    /// Input snapshot for a run-time case: all GPRs zero, then the fields.
    pub fn snapshot(&self) -> String {
        let mut s: String = (0..32).map(|i| format!("GPR{i}={:016x}\n", 0)).collect();
        for (name, v) in &self.fields {
            s.push_str(&format!("FIELD {name}={v:x}\n"));
        }
        if let Some(extra) = &self.snapshot_append {
            s.push_str(extra);
            s.push('\n');
        }
        s
    }
}
