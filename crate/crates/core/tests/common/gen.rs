//! Random expression ASTs for round-trip and precedence properties.
#![allow(dead_code)]

use rand::Rng;
use rtl2c_core::ast::{BinOp, Expr, ExprKind, IntLit, UnOp};
use rtl2c_core::lexer::{SourceSpan, TokenKind};

const CALLEES: &[&str] = &["EXTS", "EXTZ", "ROTL", "MEM", "GPR", "MASK"];

fn span() -> SourceSpan {
    SourceSpan::new("<gen>", 1, 1, 1)
}

fn node(kind: ExprKind) -> Expr {
    Expr::new(kind, span())
}

pub fn literal<R: Rng>(rng: &mut R) -> IntLit {
    match rng.gen_range(0..3) {
        0 => IntLit::dec(if rng.gen_bool(0.5) { rng.gen_range(0..100) } else { rng.gen() }),
        1 => {
            let digits = rng.gen_range(1..=16u8);
            let max = if digits == 16 { u64::MAX } else { (1u64 << (4 * digits)) - 1 };
            IntLit::hex(rng.gen_range(0..=max), digits)
        }
        _ => {
            let digits = rng.gen_range(1..=64u8);
            let max = if digits == 64 { u64::MAX } else { (1u64 << digits) - 1 };
            IntLit::bin(rng.gen_range(0..=max), digits)
        }
    }
}

pub fn identifier<R: Rng>(rng: &mut R) -> String {
    const FIRST: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const REST: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789_";
    loop {
        let mut s = String::new();
        s.push(FIRST[rng.gen_range(0..FIRST.len())] as char);
        for _ in 0..rng.gen_range(0..4) {
            s.push(REST[rng.gen_range(0..REST.len())] as char);
        }
        if TokenKind::keyword(&s).is_none() {
            return s;
        }
    }
}

/// An expression tree of at most `depth` levels below the root.
pub fn expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            node(ExprKind::IntLit(literal(rng)))
        } else {
            node(ExprKind::Var(identifier(rng)))
        };
    }
    match rng.gen_range(0..10) {
        0..=5 => {
            let op = BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())];
            node(ExprKind::Binary {
                op,
                lhs: Box::new(expr(rng, depth - 1)),
                rhs: Box::new(expr(rng, depth - 1)),
            })
        }
        6 => node(ExprKind::Unary {
            op: if rng.gen_bool(0.5) { UnOp::Neg } else { UnOp::Not },
            operand: Box::new(expr(rng, depth - 1)),
        }),
        7 | 8 => node(ExprKind::BitSlice {
            base: Box::new(expr(rng, depth - 1)),
            hi: Box::new(expr(rng, depth - 1)),
            lo: Box::new(expr(rng, depth - 1)),
        }),
        _ => {
            let n = rng.gen_range(0..=3);
            node(ExprKind::Call {
                callee: CALLEES[rng.gen_range(0..CALLEES.len())].to_string(),
                args: (0..n).map(|_| expr(rng, depth - 1)).collect(),
            })
        }
    }
}
