//! Textual machine-state snapshots exchanged with the C harness.
//!
//! ```text
//! GPR0=0000000000000000        32 lines, index order, 16 lowercase hex digits
//! ...
//! MEM 0000000000000100 11      one line per touched byte, address order
//! FIELD RA=3                   operand field values, minimal lowercase hex
//! ```
//!
//! Every line is LF-terminated. Input parsing accepts lines in any order and
//! hex digits in either case; printing is canonical.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::diagnostics::{Diagnostic, ErrorCode};
use crate::lexer::SourceSpan;
use crate::machine::{MachineState, GPR_COUNT};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Snapshot {
    pub gpr: [u64; GPR_COUNT],
    pub mem: BTreeMap<u64, u8>,
    /// Field assignments in the order given.
    pub fields: Vec<(String, u64)>,
}

impl Snapshot {
    pub fn from_state(state: &MachineState) -> Self {
        Snapshot {
            gpr: state.gpr,
            mem: state.mem.clone(),
            fields: Vec::new(),
        }
    }

    pub fn to_state(&self) -> MachineState {
        MachineState {
            gpr: self.gpr,
            mem: self.mem.clone(),
            locals: BTreeMap::new(),
        }
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.gpr.iter().enumerate() {
            let _ = writeln!(out, "GPR{i}={v:016x}");
        }
        for (addr, byte) in &self.mem {
            let _ = writeln!(out, "MEM {addr:016x} {byte:02x}");
        }
        for (name, v) in &self.fields {
            let _ = writeln!(out, "FIELD {name}={v:x}");
        }
        out
    }

    /// Parse a snapshot. All 32 GPR lines are required, each exactly once.
    pub fn parse(file: &str, text: &str) -> Result<Snapshot, Diagnostic> {
        let mut snap = Snapshot::default();
        let mut seen = [false; GPR_COUNT];
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx as u32 + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            let bad = |msg: String| {
                Diagnostic::error(
                    ErrorCode::MalformedSnapshot,
                    SourceSpan::new(file, line_no, 1, line.chars().count() as u32),
                    msg,
                )
            };
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("GPR") {
                let (index, value) = rest
                    .split_once('=')
                    .ok_or_else(|| bad("expected `GPR<i>=<hex>`".into()))?;
                let index: usize = index
                    .parse()
                    .ok()
                    .filter(|&i| i < GPR_COUNT)
                    .ok_or_else(|| bad(format!("bad register index `{index}`")))?;
                if seen[index] {
                    return Err(bad(format!("GPR{index} given twice")));
                }
                seen[index] = true;
                snap.gpr[index] = hex(value).ok_or_else(|| bad(format!("bad hex `{value}`")))?;
            } else if let Some(rest) = line.strip_prefix("MEM ") {
                let mut parts = rest.split(' ');
                let (Some(addr), Some(byte), None) = (parts.next(), parts.next(), parts.next())
                else {
                    return Err(bad("expected `MEM <hexaddr> <hexbyte>`".into()));
                };
                let addr = hex(addr).ok_or_else(|| bad(format!("bad address `{addr}`")))?;
                let byte = hex(byte)
                    .filter(|&b| b <= 0xFF)
                    .ok_or_else(|| bad(format!("bad byte `{byte}`")))?;
                snap.mem.insert(addr, byte as u8);
            } else if let Some(rest) = line.strip_prefix("FIELD ") {
                let (name, value) = rest
                    .split_once('=')
                    .ok_or_else(|| bad("expected `FIELD <name>=<hex>`".into()))?;
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(bad(format!("bad field name `{name}`")));
                }
                let value = hex(value).ok_or_else(|| bad(format!("bad hex `{value}`")))?;
                snap.fields.push((name.to_string(), value));
            } else {
                return Err(bad(format!("unrecognized snapshot line `{line}`")));
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            let line = text.lines().count() as u32 + 1;
            return Err(Diagnostic::error(
                ErrorCode::MalformedSnapshot,
                SourceSpan::new(file, line, 1, 0),
                format!("snapshot is missing GPR{missing}"),
            ));
        }
        Ok(snap)
    }
}

fn hex(text: &str) -> Option<u64> {
    if text.is_empty() || text.len() > 16 || !text.chars().all(|c| c.is_ascii_hexdigit()) {
        return None;
    }
    u64::from_str_radix(text, 16).ok()
}

/// First line at which two snapshot texts differ, as (1-based line, left, right).
pub fn first_difference<'a>(left: &'a str, right: &'a str) -> Option<(usize, &'a str, &'a str)> {
    let mut l = left.lines();
    let mut r = right.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (l.next(), r.next()) {
            (None, None) => return None,
            (a, b) if a != b => return Some((n, a.unwrap_or("<end>"), b.unwrap_or("<end>"))),
            _ => {}
        }
    }
}
