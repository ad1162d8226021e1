//! Builtin functions callable from RTL.
//!
//! Each builtin implements [`Builtin`] once and is looked up by name through a
//! [`BuiltinRegistry`]. Semantic analysis, the interpreter and the C emitter
//! all dispatch through the same registry, so a builtin's arity, width rule,
//! run-time behaviour and emitted helper call live side by side.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexMap;

use crate::ast::{Expr, ExprKind, ExprType};
use crate::bits::{self, Fault};
use crate::diagnostics::{Diagnostic, ErrorCode};
use crate::lexer::SourceSpan;
use crate::machine::MachineState;
use crate::semantics::SymbolKind;

pub trait Builtin: Send + Sync {
    fn name(&self) -> &'static str;

    /// Inclusive bounds on the number of arguments.
    fn arity(&self) -> (usize, usize);

    fn symbol_kind(&self) -> SymbolKind {
        SymbolKind::Builtin
    }

    /// Runtime helpers the emitted code calls for this builtin.
    fn c_helpers(&self) -> &'static [&'static str];

    /// Compute the call's type from its already-annotated arguments. Arity
    /// has been checked by the caller.
    fn resolve(&self, args: &[Expr], span: &SourceSpan) -> Result<ExprType, Diagnostic>;

    fn eval(&self, state: &MachineState, args: &[u64], ty: ExprType) -> Result<u64, Fault>;

    /// C99 expression for a read, given the emitted argument expressions.
    fn emit(&self, args: &[String], ty: ExprType) -> String;

    fn is_assignable(&self) -> bool {
        false
    }

    /// Whether the emitted helper takes the machine state pointer.
    fn uses_state(&self) -> bool {
        false
    }

    fn store(
        &self,
        _state: &mut MachineState,
        _args: &[u64],
        _ty: ExprType,
        _value: u64,
    ) -> Result<(), Fault> {
        Err(Fault::new(
            ErrorCode::UnknownCallee,
            format!("{} is not assignable", self.name()),
        ))
    }

    /// C99 statement (without trailing newline) storing `value`.
    fn emit_store(&self, _args: &[String], _ty: ExprType, _value: &str) -> Option<String> {
        None
    }
}

impl fmt::Debug for dyn Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Builtin({})", self.name())
    }
}

#[derive(Default)]
pub struct BuiltinRegistry {
    entries: IndexMap<&'static str, Box<dyn Builtin>>,
}

impl fmt::Debug for BuiltinRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl BuiltinRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register `builtin`, returning any previous entry of the same name.
    pub fn register(&mut self, builtin: Box<dyn Builtin>) -> Option<Box<dyn Builtin>> {
        self.entries.insert(builtin.name(), builtin)
    }

    pub fn get(&self, name: &str) -> Option<&dyn Builtin> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Builtin> {
        self.entries.values().map(|b| b.as_ref())
    }

    pub fn c_helpers(&self) -> HashSet<&'static str> {
        self.iter().flat_map(|b| b.c_helpers().iter().copied()).collect()
    }

    /// EXTS, EXTZ, ROTL, MEM, GPR and MASK.
    pub fn with_standard_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Box::new(Extend::Sign));
        reg.register(Box::new(Extend::Zero));
        reg.register(Box::new(Rotl));
        reg.register(Box::new(Mem));
        reg.register(Box::new(Gpr));
        reg.register(Box::new(Mask));
        reg
    }

    /// Process-wide registry of the standard builtins.
    pub fn standard() -> &'static BuiltinRegistry {
        static STANDARD: OnceLock<BuiltinRegistry> = OnceLock::new();
        STANDARD.get_or_init(Self::with_standard_builtins)
    }
}

fn c_width(w: u8) -> String {
    w.to_string()
}

/// EXTS / EXTZ. One argument only when it is an operand field, whose declared
/// width is then the source width.
#[derive(Debug, Clone, Copy)]
enum Extend {
    Sign,
    Zero,
}

impl Builtin for Extend {
    fn name(&self) -> &'static str {
        match self {
            Extend::Sign => "EXTS",
            Extend::Zero => "EXTZ",
        }
    }

    fn arity(&self) -> (usize, usize) {
        (1, 2)
    }

    fn c_helpers(&self) -> &'static [&'static str] {
        match self {
            Extend::Sign => &["rtl_exts"],
            Extend::Zero => &["rtl_extz"],
        }
    }

    fn resolve(&self, args: &[Expr], span: &SourceSpan) -> Result<ExprType, Diagnostic> {
        let source = match args {
            [value] => match value.kind {
                ExprKind::FieldRef(_) => Some(value.width()),
                _ => {
                    return Err(Diagnostic::error(
                        ErrorCode::BadArity,
                        span.clone(),
                        format!(
                            "{} of a non-field value needs an explicit source width argument",
                            self.name()
                        ),
                    ))
                }
            },
            [_, width] => match width.as_const() {
                Some(w) if (1..=64).contains(&w) => Some(w as u8),
                Some(w) => {
                    return Err(Diagnostic::error(
                        ErrorCode::WidthRange,
                        width.span.clone(),
                        format!("source width {w} outside 1..64"),
                    ))
                }
                None => None,
            },
            _ => unreachable!("arity checked by caller"),
        };
        Ok(ExprType {
            width: 64,
            operand_width: source,
        })
    }

    fn eval(&self, _state: &MachineState, args: &[u64], ty: ExprType) -> Result<u64, Fault> {
        let width = match ty.operand_width {
            Some(w) => w as u64,
            None => args[1],
        };
        match self {
            Extend::Sign => bits::exts(args[0], width),
            Extend::Zero => bits::extz(args[0], width),
        }
    }

    fn emit(&self, args: &[String], ty: ExprType) -> String {
        let width = ty.operand_width.map_or_else(|| args[1].clone(), c_width);
        format!("{}({}, {})", self.c_helpers()[0], args[0], width)
    }
}

#[derive(Debug, Clone, Copy)]
struct Rotl;

impl Builtin for Rotl {
    fn name(&self) -> &'static str {
        "ROTL"
    }

    fn arity(&self) -> (usize, usize) {
        (2, 2)
    }

    fn c_helpers(&self) -> &'static [&'static str] {
        &["rtl_rotl"]
    }

    fn resolve(&self, _args: &[Expr], _span: &SourceSpan) -> Result<ExprType, Diagnostic> {
        Ok(ExprType::of_width(64))
    }

    fn eval(&self, _state: &MachineState, args: &[u64], _ty: ExprType) -> Result<u64, Fault> {
        Ok(bits::rotl(args[0], args[1]))
    }

    fn emit(&self, args: &[String], _ty: ExprType) -> String {
        format!("rtl_rotl({}, {})", args[0], args[1])
    }
}

/// `MEM(ea, n)`: big-endian load or store of `n` bytes; `n` is a literal 1, 2, 4 or 8.
#[derive(Debug, Clone, Copy)]
struct Mem;

impl Builtin for Mem {
    fn name(&self) -> &'static str {
        "MEM"
    }

    fn arity(&self) -> (usize, usize) {
        (2, 2)
    }

    fn c_helpers(&self) -> &'static [&'static str] {
        &["rtl_mem_read", "rtl_mem_write"]
    }

    fn resolve(&self, args: &[Expr], _span: &SourceSpan) -> Result<ExprType, Diagnostic> {
        match args[1].as_const() {
            Some(n @ (1 | 2 | 4 | 8)) => Ok(ExprType {
                width: (n * 8) as u8,
                operand_width: Some((n * 8) as u8),
            }),
            _ => Err(Diagnostic::error(
                ErrorCode::BadAccessSize,
                args[1].span.clone(),
                "MEM access size must be the literal 1, 2, 4 or 8",
            )),
        }
    }

    fn eval(&self, state: &MachineState, args: &[u64], _ty: ExprType) -> Result<u64, Fault> {
        state.mem_read(args[0], args[1])
    }

    fn emit(&self, args: &[String], ty: ExprType) -> String {
        let n = ty.operand_width.unwrap_or(64) / 8;
        format!("rtl_mem_read(st, {}, {n})", args[0])
    }

    fn is_assignable(&self) -> bool {
        true
    }

    fn uses_state(&self) -> bool {
        true
    }

    fn store(
        &self,
        state: &mut MachineState,
        args: &[u64],
        _ty: ExprType,
        value: u64,
    ) -> Result<(), Fault> {
        state.mem_write(args[0], args[1], value)
    }

    fn emit_store(&self, args: &[String], ty: ExprType, value: &str) -> Option<String> {
        let n = ty.operand_width.unwrap_or(64) / 8;
        Some(format!("rtl_mem_write(st, {}, {n}, {value});", args[0]))
    }
}

/// `GPR(i)`: the register file indexed by the low five bits of `i`.
#[derive(Debug, Clone, Copy)]
struct Gpr;

impl Builtin for Gpr {
    fn name(&self) -> &'static str {
        "GPR"
    }

    fn arity(&self) -> (usize, usize) {
        (1, 1)
    }

    fn symbol_kind(&self) -> SymbolKind {
        SymbolKind::RegisterFile
    }

    fn c_helpers(&self) -> &'static [&'static str] {
        &["rtl_gpr_read", "rtl_gpr_write"]
    }

    fn resolve(&self, _args: &[Expr], _span: &SourceSpan) -> Result<ExprType, Diagnostic> {
        Ok(ExprType::of_width(64))
    }

    fn eval(&self, state: &MachineState, args: &[u64], _ty: ExprType) -> Result<u64, Fault> {
        Ok(state.gpr_read(args[0]))
    }

    fn emit(&self, args: &[String], _ty: ExprType) -> String {
        format!("rtl_gpr_read(st, {})", args[0])
    }

    fn is_assignable(&self) -> bool {
        true
    }

    fn uses_state(&self) -> bool {
        true
    }

    fn store(
        &self,
        state: &mut MachineState,
        args: &[u64],
        _ty: ExprType,
        value: u64,
    ) -> Result<(), Fault> {
        state.gpr_write(args[0], value);
        Ok(())
    }

    fn emit_store(&self, args: &[String], _ty: ExprType, value: &str) -> Option<String> {
        Some(format!("rtl_gpr_write(st, {}, {value});", args[0]))
    }
}

/// `MASK(start, stop)`: ones from MSB0 bit `start` through `stop`, wrapping.
#[derive(Debug, Clone, Copy)]
struct Mask;

impl Builtin for Mask {
    fn name(&self) -> &'static str {
        "MASK"
    }

    fn arity(&self) -> (usize, usize) {
        (2, 2)
    }

    fn c_helpers(&self) -> &'static [&'static str] {
        &["rtl_mask"]
    }

    fn resolve(&self, args: &[Expr], _span: &SourceSpan) -> Result<ExprType, Diagnostic> {
        for arg in args {
            if let Some(v) = arg.as_const() {
                if v > 63 {
                    return Err(Diagnostic::error(
                        ErrorCode::SliceOutOfRange,
                        arg.span.clone(),
                        format!("mask bound {v} outside 0..63"),
                    ));
                }
            }
        }
        Ok(ExprType::of_width(64))
    }

    fn eval(&self, _state: &MachineState, args: &[u64], _ty: ExprType) -> Result<u64, Fault> {
        bits::mask(args[0], args[1])
    }

    fn emit(&self, args: &[String], _ty: ExprType) -> String {
        format!("rtl_mask({}, {})", args[0], args[1])
    }
}
