//! C99 emission.
//!
//! Every instruction becomes `void rtl_<mnemonic>(rtl_state *st, uint64_t F...)`
//! built from the helpers in `power_rtl_runtime.h`. A translation unit also
//! carries one entry wrapper per function and the `rtl_registry` table the
//! harness dispatches through. Output depends only on the input definitions.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use crate::ast::{
    BinOp, Expr, ExprKind, IntLit, LitBase, Signedness, Stmt, StmtKind, Target, TargetKind, UnOp,
};
use crate::builtins::BuiltinRegistry;
use crate::semantics::AnnotatedDef;

/// The runtime header every emitted unit includes.
pub const RUNTIME_HEADER: &str = include_str!("../runtime/power_rtl_runtime.h");
pub const RUNTIME_HEADER_NAME: &str = "power_rtl_runtime.h";
/// Snapshot-in, snapshot-out driver linked against an emitted unit.
pub const HARNESS_SOURCE: &str = include_str!("../runtime/rtl_harness.c");

const INDENT: &str = "    ";

const C_KEYWORDS: &[&str] = &[
    "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else",
    "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long", "register",
    "restrict", "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef",
    "union", "unsigned", "void", "volatile", "while", "_Bool", "_Complex", "_Imaginary",
];

/// Names the emitted code or its headers already use.
const RESERVED: &[&str] = &[
    "st", "f", "main", "NULL", "EXIT_SUCCESS", "EXIT_FAILURE", "RAND_MAX", "MB_CUR_MAX",
    "offsetof", "bool", "true", "false", "errno", "assert",
];

fn is_reserved(name: &str) -> bool {
    C_KEYWORDS.contains(&name)
        || RESERVED.contains(&name)
        || name.starts_with("rtl_")
        || name.starts_with("RTL_")
        || name.starts_with('_')
        || name.ends_with("_t")
        || ["INT", "UINT", "SIZE_", "PTRDIFF_", "SIG_ATOMIC_", "WCHAR_", "WINT_"]
            .iter()
            .any(|p| name.starts_with(p))
}

/// C symbol for a mnemonic: `rtl_` prefix, `.` spelled `_rc`, anything else
/// outside `[A-Za-z0-9_]` replaced by `_`.
pub fn mangle(mnemonic: &str) -> String {
    let mut out = String::from("rtl_");
    for c in mnemonic.chars() {
        match c {
            '.' => out.push_str("_rc"),
            c if c.is_ascii_alphanumeric() || c == '_' => out.push(c),
            _ => out.push('_'),
        }
    }
    out
}

/// Hands out identifiers unique within one scope, suffixing `_2`, `_3`, ...
#[derive(Debug, Default, Clone)]
pub struct Namer {
    used: HashSet<String>,
}

impl Namer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let mut candidate = base.to_string();
        let mut n = 2;
        while self.used.contains(&candidate) {
            candidate = format!("{base}_{n}");
            n += 1;
        }
        self.used.insert(candidate.clone());
        candidate
    }
}

struct LoopCtx {
    label: String,
    switch_depth: usize,
    label_needed: bool,
}

/// Per-function emission state.
pub struct EmitContext {
    indent: usize,
    /// RTL name to C identifier, for fields and locals.
    name_map: BTreeMap<String, String>,
    /// RTL names read somewhere in the body.
    used: HashSet<String>,
    uses_state: bool,
    loops: Vec<LoopCtx>,
    labels: usize,
    registry: &'static BuiltinRegistry,
    out: String,
}

impl EmitContext {
    fn new(def: &AnnotatedDef) -> Self {
        let mut namer = Namer::new();
        namer.fresh("st");
        let mut name_map = BTreeMap::new();
        let names = def
            .def
            .fields
            .iter()
            .map(|f| f.name.as_str())
            .chain(def.symbols.locals().map(|s| s.name.as_str()));
        for name in names {
            let base = if is_reserved(name) {
                format!("v_{name}")
            } else {
                name.to_string()
            };
            name_map.insert(name.to_string(), namer.fresh(&base));
        }
        EmitContext {
            indent: 1,
            name_map,
            used: HashSet::new(),
            uses_state: false,
            loops: Vec::new(),
            labels: 0,
            registry: def.symbols.registry(),
            out: String::new(),
        }
    }

    fn c_name(&self, rtl: &str) -> &str {
        self.name_map
            .get(rtl)
            .map(String::as_str)
            .expect("analyzed name has a C spelling")
    }

    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str(INDENT);
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn read(&mut self, rtl: &str) -> String {
        self.used.insert(rtl.to_string());
        self.c_name(rtl).to_string()
    }

    fn block(&mut self, block: &[Stmt]) {
        self.indent += 1;
        for stmt in block {
            self.stmt(stmt);
        }
        self.indent -= 1;
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                let value = self.expr(value, true);
                let text = self.assign(target, &value);
                self.line(&text);
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                let c = self.cond(cond);
                self.line(&format!("if ({c}) {{"));
                self.block(then_block);
                self.else_chain(else_block);
            }
            StmtKind::Switch {
                scrutinee,
                cases,
                default,
            } => {
                let s = self.expr(scrutinee, true);
                self.line(&format!("switch ({s}) {{"));
                if let Some(l) = self.loops.last_mut() {
                    l.switch_depth += 1;
                }
                for case in cases {
                    self.line(&format!("case {}:", literal(&case.value)));
                    self.block(&case.body);
                    self.indent += 1;
                    self.line("break;");
                    self.indent -= 1;
                }
                if !default.is_empty() {
                    self.line("default:");
                    self.block(default);
                    self.indent += 1;
                    self.line("break;");
                    self.indent -= 1;
                }
                if let Some(l) = self.loops.last_mut() {
                    l.switch_depth -= 1;
                }
                self.line("}");
            }
            StmtKind::DoWhile { cond, body } => {
                let c = self.cond(cond);
                self.labels += 1;
                self.loops.push(LoopCtx {
                    label: format!("rtl_leave_{}", self.labels),
                    switch_depth: 0,
                    label_needed: false,
                });
                self.line(&format!("while ({c}) {{"));
                self.block(body);
                self.line("}");
                let ctx = self.loops.pop().expect("loop context");
                if ctx.label_needed {
                    self.indent -= 1;
                    self.line(&format!("{}:;", ctx.label));
                    self.indent += 1;
                }
            }
            StmtKind::Leave => {
                let ctx = self.loops.last_mut().expect("leave is inside a loop");
                if ctx.switch_depth == 0 {
                    self.line("break;");
                } else {
                    ctx.label_needed = true;
                    let text = format!("goto {};", ctx.label);
                    self.line(&text);
                }
            }
        }
    }

    fn else_chain(&mut self, else_block: &[Stmt]) {
        match else_block {
            [] => self.line("}"),
            [Stmt {
                kind:
                    StmtKind::If {
                        cond,
                        then_block,
                        else_block,
                    },
                ..
            }] => {
                let c = self.cond(cond);
                self.line(&format!("}} else if ({c}) {{"));
                self.block(then_block);
                self.else_chain(else_block);
            }
            _ => {
                self.line("} else {");
                self.block(else_block);
                self.line("}");
            }
        }
    }

    fn assign(&mut self, target: &Target, value: &str) -> String {
        let ty = target.ty.expect("analyzed target");
        match &target.kind {
            TargetKind::Var(name) => {
                let c = self.c_name(name).to_string();
                if ty.width >= 64 {
                    format!("{c} = {value};")
                } else {
                    format!("{c} = rtl_extz({value}, {});", ty.width)
                }
            }
            TargetKind::RegWrite(field) => {
                self.uses_state = true;
                let index = self.read(field);
                format!("rtl_gpr_write(st, {index}, {value});")
            }
            TargetKind::Slice { name, hi, lo } => {
                let c = self.read(name);
                let hi = self.expr(hi, true);
                let lo = self.expr(lo, true);
                let base = ty.operand_width.unwrap_or(64);
                format!("{c} = rtl_slice_insert({c}, {hi}, {lo}, {base}, {value});")
            }
            TargetKind::Call { callee, args } => {
                self.uses_state = true;
                let args: Vec<String> = args.iter().map(|a| self.expr(a, true)).collect();
                let builtin = self.registry.get(callee).expect("analyzed builtin");
                builtin
                    .emit_store(&args, ty, value)
                    .expect("analysis admits only assignable builtins as targets")
            }
        }
    }

    /// A C controlling expression: comparisons are emitted bare, anything
    /// else is tested against zero.
    fn cond(&mut self, expr: &Expr) -> String {
        match &expr.kind {
            ExprKind::Binary { op, lhs, rhs } if op.is_comparison() => {
                let a = self.expr(lhs, false);
                let b = self.expr(rhs, false);
                format!("{a} {} {b}", c_comparison(*op))
            }
            _ => format!("{} != 0", self.expr(expr, false)),
        }
    }

    /// `top` drops the outermost parentheses of an operator expression.
    fn expr(&mut self, expr: &Expr, top: bool) -> String {
        let wrap = |s: String| if top { s } else { format!("({s})") };
        match &expr.kind {
            ExprKind::IntLit(lit) => literal(lit),
            ExprKind::Var(name) | ExprKind::FieldRef(name) => self.read(name),
            ExprKind::RegRead(field) => {
                self.uses_state = true;
                let index = self.read(field);
                format!("rtl_gpr_read(st, {index})")
            }
            ExprKind::ParenVar(_) => unreachable!("analysis rewrites ParenVar"),
            ExprKind::Call { callee, args } => {
                let builtin = self.registry.get(callee).expect("analyzed builtin");
                self.uses_state |= builtin.uses_state();
                let args: Vec<String> = args.iter().map(|a| self.expr(a, true)).collect();
                builtin.emit(&args, expr.ty.expect("analyzed call"))
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let a = self.expr(lhs, false);
                let b = self.expr(rhs, false);
                match op {
                    BinOp::Div => format!("rtl_divu({}, {})", unwrap(&a), unwrap(&b)),
                    BinOp::Mod => format!("rtl_modu({}, {})", unwrap(&a), unwrap(&b)),
                    BinOp::Concat => format!(
                        "rtl_concat({}, {}, {}, {})",
                        unwrap(&a),
                        lhs.width(),
                        unwrap(&b),
                        rhs.width()
                    ),
                    op if op.is_comparison() => {
                        format!("(uint64_t)({a} {} {b})", c_comparison(*op))
                    }
                    BinOp::Add => wrap(format!("{a} + {b}")),
                    BinOp::Sub => wrap(format!("{a} - {b}")),
                    BinOp::Mul => wrap(format!("{a} * {b}")),
                    BinOp::And => wrap(format!("{a} & {b}")),
                    BinOp::Or => wrap(format!("{a} | {b}")),
                    BinOp::Xor => wrap(format!("{a} ^ {b}")),
                    _ => unreachable!("comparisons handled above"),
                }
            }
            ExprKind::Unary { op, operand } => {
                match op {
                    UnOp::Neg => {
                        let v = self.expr(operand, false);
                        wrap(format!("UINT64_C(0) - {v}"))
                    }
                    UnOp::Not => {
                        let v = self.expr(operand, true);
                        format!("rtl_not({v}, {})", operand.width())
                    }
                }
            }
            ExprKind::BitSlice { base, hi, lo } => {
                let v = self.expr(base, true);
                let h = self.expr(hi, true);
                let l = self.expr(lo, true);
                format!("rtl_bit_slice({v}, {h}, {l}, {})", base.width())
            }
        }
    }
}

fn c_comparison(op: BinOp) -> &'static str {
    match op {
        BinOp::Eq => "==",
        BinOp::Neq => "!=",
        BinOp::Lt => "<",
        BinOp::Gt => ">",
        BinOp::Le => "<=",
        BinOp::Ge => ">=",
        _ => unreachable!("not a comparison"),
    }
}

/// Strip one pair of parentheses wrapping the whole string.
fn unwrap(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// `UINT64_C(...)` keeping decimal literals decimal and printing hex and
/// binary ones as hex.
pub fn literal(lit: &IntLit) -> String {
    match lit.base {
        LitBase::Dec => format!("UINT64_C({})", lit.value),
        LitBase::Hex | LitBase::Bin => format!("UINT64_C(0x{:X})", lit.value),
    }
}

fn signature_comment(def: &AnnotatedDef) -> String {
    let fields: Vec<String> = def
        .def
        .fields
        .iter()
        .map(|f| match f.signedness {
            Signedness::Signed => format!("{}:{} signed", f.name, f.width),
            Signedness::Unsigned => format!("{}:{}", f.name, f.width),
        })
        .collect();
    format!("/* {}({}) */", def.def.mnemonic, fields.join(", "))
}

/// One C function definition named `symbol`.
pub fn emit_function_named(def: &AnnotatedDef, symbol: &str) -> String {
    let mut cx = EmitContext::new(def);
    for stmt in &def.def.body {
        cx.stmt(stmt);
    }
    let body = std::mem::take(&mut cx.out);

    let mut out = String::new();
    let _ = writeln!(out, "{}", signature_comment(def));
    let mut params = vec!["rtl_state *st".to_string()];
    params.extend(
        def.def
            .fields
            .iter()
            .map(|f| format!("uint64_t {}", cx.c_name(&f.name))),
    );
    let _ = writeln!(out, "void {symbol}({})", params.join(", "));
    out.push_str("{\n");

    let locals: Vec<&str> = def.symbols.locals().map(|s| s.name.as_str()).collect();
    for name in &locals {
        let _ = writeln!(out, "{INDENT}uint64_t {} = 0;", cx.c_name(name));
    }
    // Silence unused-parameter and set-but-unused warnings.
    let mut unused = Vec::new();
    if !cx.uses_state {
        unused.push("st".to_string());
    }
    for name in def.def.fields.iter().map(|f| f.name.as_str()).chain(locals.iter().copied()) {
        if !cx.used.contains(name) {
            unused.push(cx.c_name(name).to_string());
        }
    }
    for name in &unused {
        let _ = writeln!(out, "{INDENT}(void){name};");
    }
    if (!locals.is_empty() || !unused.is_empty()) && !body.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out.push_str("}\n");
    out
}

/// The function for `def` under its mangled name.
pub fn emit_function(def: &AnnotatedDef) -> String {
    emit_function_named(def, &mangle(&def.def.mnemonic))
}

struct UnitSymbols {
    function: String,
    entry: String,
    fields: String,
}

/// A complete translation unit: include, functions, entry wrappers and the
/// `rtl_registry` table, in definition order.
pub fn emit_translation_unit(defs: &[AnnotatedDef], source_name: &str) -> String {
    let mut namer = Namer::new();
    namer.fresh("rtl_registry");
    let functions: Vec<String> = defs
        .iter()
        .map(|d| namer.fresh(&mangle(&d.def.mnemonic)))
        .collect();
    let symbols: Vec<UnitSymbols> = functions
        .into_iter()
        .map(|function| UnitSymbols {
            entry: namer.fresh(&format!("{function}__entry")),
            fields: namer.fresh(&format!("{function}__fields")),
            function,
        })
        .collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "/* Generated by rtl2c from {}. Do not edit. */",
        source_name.replace("*/", "* /")
    );
    let _ = writeln!(out, "#include \"{RUNTIME_HEADER_NAME}\"");

    for (def, sym) in defs.iter().zip(&symbols) {
        out.push('\n');
        out.push_str(&emit_function_named(def, &sym.function));
    }

    for (def, sym) in defs.iter().zip(&symbols) {
        out.push('\n');
        let fields = &def.def.fields;
        if !fields.is_empty() {
            let _ = writeln!(out, "static const rtl_field_desc {}[] = {{", sym.fields);
            for f in fields {
                let signed = (f.signedness == Signedness::Signed) as u8;
                let _ = writeln!(out, "{INDENT}{{\"{}\", {}, {signed}}},", f.name, f.width);
            }
            out.push_str("};\n\n");
        }
        let _ = writeln!(
            out,
            "static void {}(rtl_state *st, const uint64_t *f)\n{{",
            sym.entry
        );
        if fields.is_empty() {
            let _ = writeln!(out, "{INDENT}(void)f;");
        }
        let args: Vec<String> = std::iter::once("st".to_string())
            .chain((0..fields.len()).map(|i| format!("f[{i}]")))
            .collect();
        let _ = writeln!(out, "{INDENT}{}({});", sym.function, args.join(", "));
        out.push_str("}\n");
    }

    out.push_str("\nconst rtl_registry_entry rtl_registry[] = {\n");
    for (def, sym) in defs.iter().zip(&symbols) {
        let fields = if def.def.fields.is_empty() {
            "NULL".to_string()
        } else {
            sym.fields.clone()
        };
        let _ = writeln!(
            out,
            "{INDENT}{{\"{}\", {}, {}, {fields}}},",
            def.def.mnemonic,
            sym.entry,
            def.def.fields.len()
        );
    }
    let _ = writeln!(out, "{INDENT}{{NULL, NULL, 0, NULL}}");
    out.push_str("};\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;
    use crate::semantics::analyze;

    fn compile(src: &str) -> AnnotatedDef {
        let defs = parse_source("t.rtl", src).expect("parses");
        analyze(&defs[0]).expect("analyzes")
    }

    #[test]
    fn mangling() {
        assert_eq!(mangle("stw_ea"), "rtl_stw_ea");
        assert_eq!(mangle("add."), "rtl_add_rc");
        assert_eq!(mangle("a-b"), "rtl_a_b");
    }

    #[test]
    fn namer_suffixes() {
        let mut n = Namer::new();
        assert_eq!(n.fresh("x"), "x");
        assert_eq!(n.fresh("x"), "x_2");
        assert_eq!(n.fresh("x"), "x_3");
    }

    #[test]
    fn reserved_names_are_renamed() {
        let def = compile("instruction k(int:5):\n    st <- int\n    rtl_x <- st\n");
        let c = emit_function(&def);
        assert!(c.contains("uint64_t v_int"), "{c}");
        assert!(c.contains("v_st = v_int;"), "{c}");
        assert!(c.contains("v_rtl_x = v_st;"), "{c}");
    }

    #[test]
    fn minimal_body_is_one_statement() {
        let def = compile("instruction z():\n    b <- 0\n");
        let c = emit_function(&def);
        let stmts: Vec<_> = c
            .lines()
            .filter(|l| l.starts_with(INDENT) && !l.contains("(void)") && !l.contains("uint64_t"))
            .collect();
        assert_eq!(stmts, vec!["    b = UINT64_C(0);"], "{c}");
    }

    #[test]
    fn leave_inside_switch_uses_goto() {
        let src = "\
instruction l(X:2):
    n <- 0
    do while n < 10:
        switch X:
            case 1:
                leave
        n <- n + 1
";
        let c = emit_function(&compile(src));
        assert!(c.contains("goto rtl_leave_1;"), "{c}");
        assert!(c.contains("rtl_leave_1:;"), "{c}");
    }

    #[test]
    fn plain_leave_is_break() {
        let src = "instruction l(X:2):\n    do while X = 1:\n        leave\n";
        let c = emit_function(&compile(src));
        assert!(c.contains("break;") && !c.contains("goto"), "{c}");
    }

    #[test]
    fn literal_spelling() {
        assert_eq!(literal(&IntLit::dec(12)), "UINT64_C(12)");
        assert_eq!(literal(&IntLit::hex(0xfffc, 4)), "UINT64_C(0xFFFC)");
        assert_eq!(literal(&IntLit::bin(2, 2)), "UINT64_C(0x2)");
    }

    #[test]
    fn unit_is_deterministic_and_has_registry() {
        let a = compile("instruction a.(RA:5):\n    (RA) <- 1\n");
        let b = compile("instruction b():\n    x <- 1\n");
        let unit = emit_translation_unit(&[a.clone(), b.clone()], "u.rtl");
        assert_eq!(unit, emit_translation_unit(&[a, b], "u.rtl"));
        assert!(unit.contains("#include \"power_rtl_runtime.h\""));
        assert!(unit.contains("{\"a.\", rtl_a_rc__entry, 1, rtl_a_rc__fields},"));
        assert!(unit.contains("{\"b\", rtl_b__entry, 0, NULL},"));
        assert!(unit.contains("{NULL, NULL, 0, NULL}"));
    }
}
