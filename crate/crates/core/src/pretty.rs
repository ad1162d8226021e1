//! Canonical RTL text from a syntax tree.
//!
//! `pretty_print` inserts only the parentheses the precedence table requires;
//! `print_expr_full` parenthesizes every compound subexpression. Both reparse
//! to the same tree.

use std::fmt::Write;

use crate::ast::{
    Expr, ExprKind, InstructionDef, Signedness, Stmt, StmtKind, Target, TargetKind,
};

const INDENT: &str = "    ";

pub fn pretty_print(def: &InstructionDef) -> String {
    let mut out = String::new();
    let fields: Vec<String> = def
        .fields
        .iter()
        .map(|f| match f.signedness {
            Signedness::Signed => format!("{}:{} signed", f.name, f.width),
            Signedness::Unsigned => format!("{}:{}", f.name, f.width),
        })
        .collect();
    let _ = writeln!(out, "instruction {}({}):", def.mnemonic, fields.join(", "));
    print_block(&mut out, &def.body, 1);
    out
}

fn print_block(out: &mut String, block: &[Stmt], depth: usize) {
    for stmt in block {
        print_stmt(out, stmt, depth);
    }
}

fn print_stmt(out: &mut String, stmt: &Stmt, depth: usize) {
    let pad = INDENT.repeat(depth);
    match &stmt.kind {
        StmtKind::Assign { target, value } => {
            let _ = writeln!(out, "{pad}{} <- {}", print_target(target), print_expr(value));
        }
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            let _ = writeln!(out, "{pad}if {} then", print_expr(cond));
            print_block(out, then_block, depth + 1);
            if !else_block.is_empty() {
                let _ = writeln!(out, "{pad}else");
                print_block(out, else_block, depth + 1);
            }
        }
        StmtKind::Switch {
            scrutinee,
            cases,
            default,
        } => {
            let _ = writeln!(out, "{pad}switch {}:", print_expr(scrutinee));
            let case_pad = INDENT.repeat(depth + 1);
            for case in cases {
                let _ = writeln!(out, "{case_pad}case {}:", case.value);
                print_block(out, &case.body, depth + 2);
            }
            if !default.is_empty() {
                let _ = writeln!(out, "{case_pad}default:");
                print_block(out, default, depth + 2);
            }
        }
        StmtKind::DoWhile { cond, body } => {
            let _ = writeln!(out, "{pad}do while {}:", print_expr(cond));
            print_block(out, body, depth + 1);
        }
        StmtKind::Leave => {
            let _ = writeln!(out, "{pad}leave");
        }
    }
}

pub fn print_target(target: &Target) -> String {
    match &target.kind {
        TargetKind::Var(name) => name.clone(),
        TargetKind::RegWrite(name) => format!("({name})"),
        TargetKind::Slice { name, hi, lo } => {
            format!("{name}[{}:{}]", print_expr(hi), print_expr(lo))
        }
        TargetKind::Call { callee, args } => format!("{callee}({})", print_args(args, false)),
    }
}

/// Minimal-parentheses rendering.
pub fn print_expr(expr: &Expr) -> String {
    render(expr, false)
}

/// Every binary and unary subexpression wrapped in parentheses.
pub fn print_expr_full(expr: &Expr) -> String {
    render(expr, true)
}

fn print_args(args: &[Expr], full: bool) -> String {
    args.iter()
        .map(|a| render(a, full))
        .collect::<Vec<_>>()
        .join(", ")
}

fn is_compound(expr: &Expr) -> bool {
    matches!(expr.kind, ExprKind::Binary { .. } | ExprKind::Unary { .. })
}

fn render(expr: &Expr, full: bool) -> String {
    match &expr.kind {
        ExprKind::IntLit(lit) => lit.to_string(),
        ExprKind::Var(name) | ExprKind::FieldRef(name) => name.clone(),
        ExprKind::RegRead(name) | ExprKind::ParenVar(name) => format!("({name})"),
        ExprKind::Call { callee, args } => format!("{callee}({})", print_args(args, full)),
        ExprKind::Binary { op, lhs, rhs } => {
            let prec = op.precedence();
            let wrap_lhs = full && is_compound(lhs)
                || matches!(&lhs.kind, ExprKind::Binary { op: l, .. }
                    if l.precedence() < prec || (op.is_comparison() && l.precedence() == prec));
            let wrap_rhs = full && is_compound(rhs)
                || matches!(&rhs.kind, ExprKind::Binary { op: r, .. } if r.precedence() <= prec);
            format!(
                "{} {} {}",
                paren(render(lhs, full), wrap_lhs),
                op.symbol(),
                paren(render(rhs, full), wrap_rhs)
            )
        }
        ExprKind::Unary { op, operand } => {
            let wrap = match operand.kind {
                ExprKind::Binary { .. } => true,
                ExprKind::Unary { .. } => full,
                _ => false,
            };
            format!("{}{}", op.symbol(), paren(render(operand, full), wrap))
        }
        ExprKind::BitSlice { base, hi, lo } => format!(
            "{}[{}:{}]",
            paren(render(base, full), is_compound(base)),
            render(hi, full),
            render(lo, full)
        ),
    }
}

fn paren(text: String, wrap: bool) -> String {
    if wrap {
        format!("({text})")
    } else {
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{BinOp, IntLit};
    use crate::lexer::{tokenize, SourceSpan};
    use crate::parser::{parse_expression, parse_source};

    fn reparse(src: &str) -> Expr {
        let toks = tokenize(src).unwrap();
        parse_expression(&toks, 0).unwrap().0
    }

    #[test]
    fn int_literal_prints_plainly() {
        let e = Expr::new(ExprKind::IntLit(IntLit::dec(0)), SourceSpan::new("t", 1, 1, 1));
        assert_eq!(print_expr(&e), "0");
    }

    #[test]
    fn ea_expression() {
        let src = "b + EXTS(D)";
        assert_eq!(print_expr(&reparse(src)), src);
    }

    #[test]
    fn minimal_and_full_parentheses() {
        for src in [
            "(a + b) * c",
            "a - (b - c)",
            "(a = b) = c",
            "-(a + b)",
            "(a || b)[0:3]",
            "(RA)[32:63] || 0b00",
            "!(a & b) | c",
            "a < -b",
            "--x",
        ] {
            let e = reparse(src);
            assert_eq!(print_expr(&e), src);
            assert_eq!(reparse(&print_expr_full(&e)), e, "{}", print_expr_full(&e));
        }
        let e = reparse("a + b * c");
        assert_eq!(print_expr_full(&e), "a + (b * c)");
        assert!(matches!(e.kind, ExprKind::Binary { op: BinOp::Add, .. }));
    }

    #[test]
    fn statements_round_trip() {
        let src = "\
instruction t.x(RS:5, RA:5, D:16 signed):
    if RA = 0 then
        b <- 0
    else
        b <- (RA)
    switch D[14:15]:
        case 0b01:
            MEM(b, 4) <- (RS)[32:63]
        case 3:
            b[0:7] <- 0xFF
        default:
            (RA) <- b
    do while b != 0:
        b <- b - 1
        if b = 7 then
            leave
";
        let defs = parse_source("<t>", src).unwrap();
        let printed = pretty_print(&defs[0]);
        assert_eq!(printed, src);
        assert_eq!(parse_source("<t>", &printed).unwrap(), defs);
    }
}
