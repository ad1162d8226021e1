//! Symbol resolution, implicit locals and width inference.
//!
//! Names first seen as assignment targets become 64-bit unsigned locals.
//! Use-before-assign is checked flow-insensitively: an assignment anywhere in
//! the body makes a read legal, and unassigned locals read as zero at run time.

use std::collections::HashSet;

use indexmap::IndexMap;

use crate::ast::{
    walk_stmts, BinOp, Expr, ExprKind, ExprType, InstructionDef, Signedness, Stmt, StmtKind,
    Target, TargetKind, UnOp,
};
use crate::builtins::BuiltinRegistry;
use crate::diagnostics::{Diagnostic, ErrorCode};
use crate::lexer::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    OperandField,
    Local,
    Builtin,
    RegisterFile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub width: u8,
    pub signedness: Signedness,
    /// `None` for builtins.
    pub decl_span: Option<SourceSpan>,
}

/// Per-definition symbols in declaration order: builtins, operand fields,
/// then locals in order of first assignment.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    symbols: IndexMap<String, Symbol>,
    registry: &'static BuiltinRegistry,
}

impl PartialEq for SymbolTable {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl SymbolTable {
    pub fn new(registry: &'static BuiltinRegistry) -> Self {
        let mut symbols = IndexMap::new();
        for builtin in registry.iter() {
            symbols.insert(
                builtin.name().to_string(),
                Symbol {
                    name: builtin.name().to_string(),
                    kind: builtin.symbol_kind(),
                    width: 64,
                    signedness: Signedness::Unsigned,
                    decl_span: None,
                },
            );
        }
        SymbolTable { symbols, registry }
    }

    pub fn registry(&self) -> &'static BuiltinRegistry {
        self.registry
    }

    pub fn lookup(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    fn insert(&mut self, symbol: Symbol) {
        self.symbols.insert(symbol.name.clone(), symbol);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn of_kind(&self, kind: SymbolKind) -> impl Iterator<Item = &Symbol> {
        self.symbols.values().filter(move |s| s.kind == kind)
    }

    pub fn locals(&self) -> impl Iterator<Item = &Symbol> {
        self.of_kind(SymbolKind::Local)
    }

    fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        self.lookup(name).map(|s| s.kind)
    }
}

/// An instruction definition after successful analysis: every expression
/// carries a width, and every name resolves in `symbols`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedDef {
    pub def: InstructionDef,
    pub symbols: SymbolTable,
}

pub fn analyze(def: &InstructionDef) -> Result<AnnotatedDef, Vec<Diagnostic>> {
    analyze_with(def, BuiltinRegistry::standard())
}

pub fn analyze_with(
    def: &InstructionDef,
    registry: &'static BuiltinRegistry,
) -> Result<AnnotatedDef, Vec<Diagnostic>> {
    let mut analyzer = Analyzer {
        table: SymbolTable::new(registry),
        diagnostics: Vec::new(),
        loop_depth: 0,
    };
    analyzer.declare_fields(def);
    analyzer.declare_locals(&def.body);
    let mut out = def.clone();
    for stmt in &mut out.body {
        analyzer.stmt(stmt);
    }
    if analyzer.diagnostics.is_empty() {
        Ok(AnnotatedDef {
            def: out,
            symbols: analyzer.table,
        })
    } else {
        Err(analyzer.diagnostics)
    }
}

/// Width of `expr` under `table`, applying the same rules as `analyze`.
pub fn infer_width(expr: &Expr, table: &SymbolTable) -> Result<u8, Diagnostic> {
    let mut analyzer = Analyzer {
        table: table.clone(),
        diagnostics: Vec::new(),
        loop_depth: 0,
    };
    let mut scratch = expr.clone();
    analyzer.expr(&mut scratch);
    match analyzer.diagnostics.into_iter().next() {
        Some(d) => Err(d),
        None => Ok(scratch.width()),
    }
}

struct Analyzer {
    table: SymbolTable,
    diagnostics: Vec<Diagnostic>,
    loop_depth: usize,
}

impl Analyzer {
    fn error(&mut self, code: ErrorCode, span: &SourceSpan, message: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::error(code, span.clone(), message));
    }

    fn declare_fields(&mut self, def: &InstructionDef) {
        for field in &def.fields {
            if self.table.lookup(&field.name).is_some() {
                self.error(
                    ErrorCode::ReservedName,
                    &field.span,
                    format!("`{}` names a builtin and cannot be an operand field", field.name),
                );
                continue;
            }
            self.table.insert(Symbol {
                name: field.name.clone(),
                kind: SymbolKind::OperandField,
                width: field.width,
                signedness: field.signedness,
                decl_span: Some(field.span.clone()),
            });
        }
    }

    fn declare_locals(&mut self, body: &[Stmt]) {
        let mut assigned: Vec<(&str, &SourceSpan)> = Vec::new();
        walk_stmts(body, &mut |stmt| {
            if let StmtKind::Assign { target, .. } = &stmt.kind {
                match &target.kind {
                    TargetKind::Var(name) | TargetKind::Slice { name, .. } => {
                        assigned.push((name, &target.span))
                    }
                    TargetKind::RegWrite(name) => assigned.push((name, &target.span)),
                    TargetKind::Call { .. } => {}
                }
            }
        });
        for (name, span) in assigned {
            match self.table.kind_of(name) {
                None => self.table.insert(Symbol {
                    name: name.to_string(),
                    kind: SymbolKind::Local,
                    width: 64,
                    signedness: Signedness::Unsigned,
                    decl_span: Some(span.clone()),
                }),
                Some(SymbolKind::Local) | Some(SymbolKind::OperandField) => {}
                Some(SymbolKind::Builtin) | Some(SymbolKind::RegisterFile) => self.error(
                    ErrorCode::ReservedName,
                    span,
                    format!("`{name}` names a builtin and cannot be assigned"),
                ),
            }
        }
    }

    fn block(&mut self, block: &mut [Stmt]) {
        for stmt in block {
            self.stmt(stmt);
        }
    }

    fn stmt(&mut self, stmt: &mut Stmt) {
        match &mut stmt.kind {
            StmtKind::Assign { target, value } => {
                self.target(target);
                self.expr(value);
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                self.expr(cond);
                self.block(then_block);
                self.block(else_block);
            }
            StmtKind::Switch {
                scrutinee,
                cases,
                default,
            } => {
                self.expr(scrutinee);
                let mut seen = HashSet::new();
                for case in cases.iter_mut() {
                    if !seen.insert(case.value.value) {
                        let span = case.span.clone();
                        self.error(
                            ErrorCode::DuplicateCase,
                            &span,
                            format!("case value {} appears more than once", case.value.value),
                        );
                    }
                    self.block(&mut case.body);
                }
                self.block(default);
            }
            StmtKind::DoWhile { cond, body } => {
                self.expr(cond);
                self.loop_depth += 1;
                self.block(body);
                self.loop_depth -= 1;
            }
            StmtKind::Leave => {
                if self.loop_depth == 0 {
                    let span = stmt.span.clone();
                    self.error(
                        ErrorCode::LeaveOutsideLoop,
                        &span,
                        "`leave` outside of a `do while` loop",
                    );
                }
            }
        }
    }

    fn target(&mut self, target: &mut Target) {
        let span = target.span.clone();
        if let TargetKind::RegWrite(name) = &target.kind {
            if self.table.kind_of(name) != Some(SymbolKind::OperandField) {
                // `(x) <- v` with x not a field is plain grouping
                target.kind = TargetKind::Var(name.clone());
            }
        }
        match &mut target.kind {
            TargetKind::Var(name) => {
                if self.table.kind_of(name) == Some(SymbolKind::OperandField) {
                    let msg = format!("operand field `{name}` is read-only");
                    self.error(ErrorCode::AssignToField, &span, msg);
                }
                target.ty = Some(ExprType::of_width(self.name_width(name)));
            }
            TargetKind::RegWrite(_) => target.ty = Some(ExprType::of_width(64)),
            TargetKind::Slice { name, hi, lo } => {
                if self.table.kind_of(name) == Some(SymbolKind::OperandField) {
                    let msg = format!("operand field `{name}` is read-only");
                    self.error(ErrorCode::AssignToField, &span, msg);
                }
                let base_width = self.name_width(name);
                self.expr(hi);
                self.expr(lo);
                let width = self.slice_width(hi, lo, base_width, &span);
                target.ty = Some(ExprType {
                    width,
                    operand_width: Some(base_width),
                });
            }
            TargetKind::Call { callee, args } => {
                for arg in args.iter_mut() {
                    self.expr(arg);
                }
                let registry = self.table.registry();
                match registry.get(callee) {
                    Some(b) if b.is_assignable() => {
                        let callee = callee.clone();
                        target.ty = self.resolve_call(&callee, args, &span);
                    }
                    Some(_) => {
                        let msg = format!("builtin `{callee}` cannot be assigned to");
                        self.error(ErrorCode::UnknownCallee, &span, msg);
                    }
                    None => {
                        let msg = format!("unknown builtin `{callee}`");
                        self.error(ErrorCode::UnknownCallee, &span, msg);
                    }
                }
            }
        }
    }

    fn name_width(&self, name: &str) -> u8 {
        self.table.lookup(name).map_or(64, |s| s.width)
    }

    fn slice_width(&mut self, hi: &Expr, lo: &Expr, base_width: u8, span: &SourceSpan) -> u8 {
        match (hi.as_const(), lo.as_const()) {
            (Some(h), Some(l)) => {
                if h <= l && l < base_width as u64 {
                    (l - h + 1) as u8
                } else {
                    self.error(
                        ErrorCode::SliceOutOfRange,
                        span,
                        format!("bit slice [{h}:{l}] outside a {base_width}-bit value"),
                    );
                    64
                }
            }
            _ => 64,
        }
    }

    fn resolve_call(&mut self, callee: &str, args: &[Expr], span: &SourceSpan) -> Option<ExprType> {
        let builtin = self.table.registry().get(callee)?;
        let (min, max) = builtin.arity();
        if args.len() < min || args.len() > max {
            let expected = if min == max {
                min.to_string()
            } else {
                format!("{min} to {max}")
            };
            self.error(
                ErrorCode::BadArity,
                span,
                format!("{callee} takes {expected} arguments, got {}", args.len()),
            );
            return None;
        }
        match builtin.resolve(args, span) {
            Ok(ty) => Some(ty),
            Err(d) => {
                self.diagnostics.push(d);
                None
            }
        }
    }

    fn expr(&mut self, expr: &mut Expr) {
        let span = expr.span.clone();
        // settle parenthesized and bare names first
        let renamed = match &expr.kind {
            ExprKind::ParenVar(name) | ExprKind::RegRead(name) => {
                Some(if self.table.kind_of(name) == Some(SymbolKind::OperandField) {
                    ExprKind::RegRead(name.clone())
                } else {
                    ExprKind::Var(name.clone())
                })
            }
            ExprKind::Var(name) | ExprKind::FieldRef(name) => {
                Some(if self.table.kind_of(name) == Some(SymbolKind::OperandField) {
                    ExprKind::FieldRef(name.clone())
                } else {
                    ExprKind::Var(name.clone())
                })
            }
            _ => None,
        };
        if let Some(kind) = renamed {
            expr.kind = kind;
        }

        let ty = match &mut expr.kind {
            ExprKind::IntLit(lit) => ExprType::of_width(lit.width()),
            ExprKind::FieldRef(name) => ExprType::of_width(self.name_width(name)),
            ExprKind::RegRead(_) => ExprType::of_width(64),
            ExprKind::Var(name) => {
                if self.table.kind_of(name) != Some(SymbolKind::Local) {
                    let msg = format!("`{name}` is never assigned and is not an operand field");
                    self.error(ErrorCode::UseBeforeAssign, &span, msg);
                }
                ExprType::of_width(64)
            }
            ExprKind::ParenVar(_) => unreachable!("rewritten above"),
            ExprKind::Call { callee, args } => {
                for arg in args.iter_mut() {
                    self.expr(arg);
                }
                if self.table.registry().contains(callee) {
                    let callee = callee.clone();
                    self.resolve_call(&callee, args, &span)
                        .unwrap_or(ExprType::of_width(64))
                } else {
                    let msg = format!("unknown builtin `{callee}`");
                    self.error(ErrorCode::UnknownCallee, &span, msg);
                    ExprType::of_width(64)
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                self.expr(lhs);
                self.expr(rhs);
                let width = match op {
                    _ if op.is_comparison() => 1,
                    BinOp::Concat => {
                        let total = lhs.width() as u32 + rhs.width() as u32;
                        if total > 64 {
                            self.error(
                                ErrorCode::Overwide,
                                &span,
                                format!("concatenation is {total} bits wide; the limit is 64"),
                            );
                            64
                        } else {
                            total as u8
                        }
                    }
                    _ => 64,
                };
                ExprType::of_width(width)
            }
            ExprKind::Unary { op, operand } => {
                self.expr(operand);
                match op {
                    UnOp::Neg => ExprType::of_width(64),
                    UnOp::Not => ExprType::of_width(operand.width()),
                }
            }
            ExprKind::BitSlice { base, hi, lo } => {
                self.expr(base);
                self.expr(hi);
                self.expr(lo);
                let width = self.slice_width(hi, lo, base.width(), &span);
                ExprType::of_width(width)
            }
        };
        expr.ty = Some(ty);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    const LISTING: &str = "\
instruction stw_ea(RS:5, RA:5, D:16 signed):
    if RA = 0 then
        b <-0
    else
        b <- (RA)
    EA <- b + EXTS(D)
";

    fn def(src: &str) -> InstructionDef {
        parse_source("<t>", src).unwrap().remove(0)
    }

    fn body(lines: &str) -> String {
        let mut src = String::from("instruction t(RA:5, RS:5, D:16 signed):\n");
        for line in lines.lines() {
            src.push_str("    ");
            src.push_str(line);
            src.push('\n');
        }
        src
    }

    fn errors(lines: &str) -> Vec<ErrorCode> {
        analyze(&def(&body(lines)))
            .unwrap_err()
            .into_iter()
            .map(|d| d.code)
            .collect()
    }

    fn last_value(ann: &AnnotatedDef) -> &Expr {
        match &ann.def.body.last().unwrap().kind {
            StmtKind::Assign { value, .. } => value,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn listing_symbols() {
        let ann = analyze(&def(LISTING)).unwrap();
        let locals: Vec<_> = ann.symbols.locals().map(|s| (s.name.as_str(), s.width)).collect();
        assert_eq!(locals, vec![("b", 64), ("EA", 64)]);
        let fields: Vec<_> = ann
            .symbols
            .of_kind(SymbolKind::OperandField)
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(fields, vec!["RS", "RA", "D"]);
        match &ann.def.body[0].kind {
            StmtKind::If { else_block, .. } => match &else_block[0].kind {
                StmtKind::Assign { value, .. } => {
                    assert_eq!(value.kind, ExprKind::RegRead("RA".into()))
                }
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exts_of_field_uses_declared_width() {
        let ann = analyze(&def(LISTING)).unwrap();
        let value = last_value(&ann);
        let ExprKind::Binary { rhs, .. } = &value.kind else {
            panic!()
        };
        assert_eq!(
            rhs.ty,
            Some(ExprType {
                width: 64,
                operand_width: Some(16)
            })
        );
        assert_eq!(value.width(), 64);
    }

    #[test]
    fn every_node_is_annotated() {
        let ann = analyze(&def(LISTING)).unwrap();
        walk_stmts(&ann.def.body, &mut |stmt| {
            for e in stmt.exprs() {
                e.walk(&mut |n| {
                    let w = n.ty.expect("annotated").width;
                    assert!((1..=64).contains(&w));
                    assert!(!matches!(n.kind, ExprKind::ParenVar(_)));
                });
            }
        });
    }

    #[test]
    fn idempotent() {
        let once = analyze(&def(LISTING)).unwrap();
        let twice = analyze(&once.def).unwrap();
        assert_eq!(once.symbols, twice.symbols);
        let mut a = Vec::new();
        let mut b = Vec::new();
        walk_stmts(&once.def.body, &mut |s| {
            s.exprs().iter().for_each(|e| e.walk(&mut |n| a.push(n.ty)))
        });
        walk_stmts(&twice.def.body, &mut |s| {
            s.exprs().iter().for_each(|e| e.walk(&mut |n| b.push(n.ty)))
        });
        assert_eq!(a, b);
    }

    #[test]
    fn paren_local_is_grouping() {
        let ann = analyze(&def(&body("b <- 1\nc <- (b)"))).unwrap();
        assert_eq!(last_value(&ann).kind, ExprKind::Var("b".into()));
    }

    #[test]
    fn widths() {
        let table = analyze(&def(&body("x <- 0"))).unwrap().symbols;
        let width = |src: &str| {
            let toks = crate::lexer::tokenize(src).unwrap();
            let e = crate::parser::Parser::new(&toks)
                .with_fields(["RA", "RS", "D"])
                .parse_expression(0)
                .unwrap();
            infer_width(&e, &table)
        };
        assert_eq!(width("RA = 0"), Ok(1));
        assert_eq!(width("D || D"), Ok(32));
        assert_eq!(width("x[32:63]"), Ok(32));
        assert_eq!(width("x[7]"), Ok(1));
        assert_eq!(width("x[RA:63]"), Ok(64));
        assert_eq!(width("0b0001 || 0b1"), Ok(5));
        assert_eq!(width("0xFF"), Ok(8));
        assert_eq!(width("1"), Ok(64));
        assert_eq!(width("RA"), Ok(5));
        assert_eq!(width("!RA"), Ok(5));
        assert_eq!(width("-RA"), Ok(64));
        assert_eq!(width("MEM(x, 2)"), Ok(16));
        assert_eq!(width("RA + RS"), Ok(64));
        assert_eq!(width("x || x").unwrap_err().code, ErrorCode::Overwide);
    }

    #[test]
    fn use_before_assign() {
        let diags = analyze(&def(&body("EA <- c + 1"))).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, ErrorCode::UseBeforeAssign);
        assert_eq!((diags[0].span.line, diags[0].span.column), (2, 11));
        // flow-insensitive: a later assignment is enough
        assert!(analyze(&def(&body("EA <- c + 1\nc <- 2"))).is_ok());
    }

    #[test]
    fn error_codes() {
        assert_eq!(errors("x <- FOO(1)"), vec![ErrorCode::UnknownCallee]);
        assert_eq!(errors("x <- EXTS(1)"), vec![ErrorCode::BadArity]);
        assert_eq!(errors("x <- ROTL(1)"), vec![ErrorCode::BadArity]);
        assert_eq!(errors("leave"), vec![ErrorCode::LeaveOutsideLoop]);
        assert_eq!(errors("RA <- 1"), vec![ErrorCode::AssignToField]);
        assert_eq!(errors("D[0:3] <- 1"), vec![ErrorCode::AssignToField]);
        assert_eq!(errors("x <- D[0:16]"), vec![ErrorCode::SliceOutOfRange]);
        assert_eq!(errors("x <- 0\nx <- x[9:8]"), vec![ErrorCode::SliceOutOfRange]);
        assert_eq!(errors("x <- 0\nx[60:64] <- 1"), vec![ErrorCode::SliceOutOfRange]);
        assert_eq!(errors("x <- (RA) || (RS)"), vec![ErrorCode::Overwide]);
        assert_eq!(errors("x <- MEM(0, 3)"), vec![ErrorCode::BadAccessSize]);
        assert_eq!(errors("x <- 8\ny <- MEM(0, x)"), vec![ErrorCode::BadAccessSize]);
        assert_eq!(errors("x <- EXTS(D, 65)"), vec![ErrorCode::WidthRange]);
        assert_eq!(errors("x <- MASK(0, 64)"), vec![ErrorCode::SliceOutOfRange]);
        assert_eq!(errors("EXTS(D) <- 1"), vec![ErrorCode::UnknownCallee]);
        assert_eq!(errors("MEM <- 1"), vec![ErrorCode::ReservedName]);
        assert_eq!(
            errors("switch RA:\n    case 1:\n        x <- 1\n    case 0x1:\n        x <- 2"),
            vec![ErrorCode::DuplicateCase]
        );
    }

    #[test]
    fn leave_inside_loop_is_fine() {
        assert!(analyze(&def(&body("x <- 0\ndo while x < 3:\n    if x = 1 then\n        leave\n    x <- x + 1"))).is_ok());
    }

    #[test]
    fn field_named_like_builtin() {
        let d = def("instruction t(MEM:5):\n    x <- 0\n");
        let diags = analyze(&d).unwrap_err();
        assert_eq!(diags[0].code, ErrorCode::ReservedName);
    }

    #[test]
    fn single_symbol_per_name() {
        let ann = analyze(&def(&body("x <- 1\nx <- 2\nx[0:3] <- 1"))).unwrap();
        assert_eq!(ann.symbols.iter().filter(|s| s.name == "x").count(), 1);
    }
}
