//! Power ISA RTL pseudo-code front-end, reference interpreter and C99 emitter.
//!
//! The pipeline is `lexer` → `parser` → `semantics`, after which an
//! [`AnnotatedDef`](semantics::AnnotatedDef) can be executed by the
//! `interpreter` or lowered to C by `codegen`.

pub mod ast;
pub mod bits;
pub mod builtins;
pub mod codegen;
pub mod diagnostics;
pub mod interpreter;
pub mod lexer;
pub mod machine;
pub mod parser;
pub mod pretty;
pub mod semantics;
pub mod snapshot;

use std::collections::HashMap;

use diagnostics::{Diagnostic, ErrorCode};
use semantics::AnnotatedDef;

/// Parse and analyze every definition in a source file. Diagnostics from all
/// stages are collected and returned together, in source order.
pub fn compile_source(file: &str, src: &str) -> Result<Vec<AnnotatedDef>, Vec<Diagnostic>> {
    let defs = parser::parse_source(file, src)?;
    let mut out = Vec::with_capacity(defs.len());
    let mut errors = Vec::new();
    let mut seen: HashMap<&str, u32> = HashMap::new();
    for def in &defs {
        if let Some(first) = seen.insert(&def.mnemonic, def.span.line) {
            errors.push(Diagnostic::error(
                ErrorCode::DuplicateInstruction,
                def.span.clone(),
                format!(
                    "instruction `{}` is already defined on line {first}",
                    def.mnemonic
                ),
            ));
            seen.insert(&def.mnemonic, first);
        }
        match semantics::analyze(def) {
            Ok(a) => out.push(a),
            Err(mut d) => errors.append(&mut d),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        errors.sort_by_key(|d| (d.span.line, d.span.column));
        Err(errors)
    }
}
