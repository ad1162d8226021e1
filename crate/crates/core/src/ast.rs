//! Syntax tree for RTL instruction definitions.
//!
//! Equality on every node is structural: source spans and width annotations
//! are ignored, so a reparsed tree compares equal to the original.

use std::fmt;

use crate::lexer::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LitBase {
    Dec,
    Hex,
    Bin,
}

/// Integer literal. Hex and binary literals remember their digit count since
/// that count is their width (`0b0001` is four bits wide). `digits` is 0 for
/// decimal literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntLit {
    pub value: u64,
    pub base: LitBase,
    pub digits: u8,
}

impl IntLit {
    pub fn dec(value: u64) -> Self {
        IntLit {
            value,
            base: LitBase::Dec,
            digits: 0,
        }
    }

    pub fn hex(value: u64, digits: u8) -> Self {
        IntLit {
            value,
            base: LitBase::Hex,
            digits,
        }
    }

    pub fn bin(value: u64, digits: u8) -> Self {
        IntLit {
            value,
            base: LitBase::Bin,
            digits,
        }
    }

    pub fn width(&self) -> u8 {
        match self.base {
            LitBase::Dec => 64,
            LitBase::Hex => (self.digits * 4).min(64),
            LitBase::Bin => self.digits.min(64),
        }
    }
}

impl fmt::Display for IntLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits as usize;
        match self.base {
            LitBase::Dec => write!(f, "{}", self.value),
            LitBase::Hex => write!(f, "0x{:0digits$X}", self.value),
            LitBase::Bin => write!(f, "0b{:0digits$b}", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    And,
    Or,
    Xor,
    Concat,
    Eq,
    Neq,
    Lt,
    Gt,
    Le,
    Ge,
}

impl BinOp {
    pub const ALL: [BinOp; 15] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Mod,
        BinOp::And,
        BinOp::Or,
        BinOp::Xor,
        BinOp::Concat,
        BinOp::Eq,
        BinOp::Neq,
        BinOp::Lt,
        BinOp::Gt,
        BinOp::Le,
        BinOp::Ge,
    ];

    /// Binding strength, loosest first. Comparisons are non-associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Eq | BinOp::Neq | BinOp::Lt | BinOp::Gt | BinOp::Le | BinOp::Ge => 1,
            BinOp::Or => 2,
            BinOp::Xor => 3,
            BinOp::And => 4,
            BinOp::Concat => 5,
            BinOp::Add | BinOp::Sub => 6,
            BinOp::Mul | BinOp::Div | BinOp::Mod => 7,
        }
    }

    pub fn is_comparison(self) -> bool {
        self.precedence() == 1
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Xor => "^",
            BinOp::Concat => "||",
            BinOp::Eq => "=",
            BinOp::Neq => "!=",
            BinOp::Lt => "<",
            BinOp::Gt => ">",
            BinOp::Le => "<=",
            BinOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Neg,
    Not,
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "-",
            UnOp::Not => "!",
        }
    }
}

/// Width annotation attached by semantic analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExprType {
    /// Width of the value this node produces, 1..=64.
    pub width: u8,
    /// Width of the operand a builtin consumes, when it is statically known
    /// (source width of EXTS/EXTZ, access width of MEM).
    pub operand_width: Option<u8>,
}

impl ExprType {
    pub fn of_width(width: u8) -> Self {
        ExprType {
            width,
            operand_width: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    IntLit(IntLit),
    Var(String),
    FieldRef(String),
    /// `(RA)`: contents of the GPR indexed by operand field `RA`.
    RegRead(String),
    /// Parenthesized lone identifier whose role is decided by analysis.
    ParenVar(String),
    Call {
        callee: String,
        args: Vec<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Unary {
        op: UnOp,
        operand: Box<Expr>,
    },
    /// `base[hi:lo]` with MSB0 indices, `hi <= lo`.
    BitSlice {
        base: Box<Expr>,
        hi: Box<Expr>,
        lo: Box<Expr>,
    },
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
    pub ty: Option<ExprType>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Expr {
            kind,
            span,
            ty: None,
        }
    }

    /// Annotated width. Panics on an unanalyzed node.
    pub fn width(&self) -> u8 {
        self.ty.expect("expression has not been analyzed").width
    }

    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::IntLit(_)
            | ExprKind::Var(_)
            | ExprKind::FieldRef(_)
            | ExprKind::RegRead(_)
            | ExprKind::ParenVar(_) => Vec::new(),
            ExprKind::Call { args, .. } => args.iter().collect(),
            ExprKind::Binary { lhs, rhs, .. } => vec![lhs, rhs],
            ExprKind::Unary { operand, .. } => vec![operand],
            ExprKind::BitSlice { base, hi, lo } => vec![base, hi, lo],
        }
    }

    /// Pre-order traversal of this node and all descendants.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for child in self.children() {
            child.walk(f);
        }
    }

    pub fn as_const(&self) -> Option<u64> {
        match &self.kind {
            ExprKind::IntLit(lit) => Some(lit.value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetKind {
    Var(String),
    /// `(RT) <- v`
    RegWrite(String),
    /// `x[hi:lo] <- v`
    Slice { name: String, hi: Expr, lo: Expr },
    /// Assignable builtin such as `MEM(EA, 4) <- v` or `GPR(i) <- v`.
    Call { callee: String, args: Vec<Expr> },
}

#[derive(Debug, Clone)]
pub struct Target {
    pub kind: TargetKind,
    pub span: SourceSpan,
    pub ty: Option<ExprType>,
}

impl PartialEq for Target {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Target {
    pub fn exprs(&self) -> Vec<&Expr> {
        match &self.kind {
            TargetKind::Var(_) | TargetKind::RegWrite(_) => Vec::new(),
            TargetKind::Slice { hi, lo, .. } => vec![hi, lo],
            TargetKind::Call { args, .. } => args.iter().collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SwitchCase {
    pub value: IntLit,
    pub span: SourceSpan,
    pub body: Vec<Stmt>,
}

impl PartialEq for SwitchCase {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.body == other.body
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Assign {
        target: Target,
        value: Expr,
    },
    If {
        cond: Expr,
        then_block: Vec<Stmt>,
        else_block: Vec<Stmt>,
    },
    Switch {
        scrutinee: Expr,
        cases: Vec<SwitchCase>,
        default: Vec<Stmt>,
    },
    /// Top-tested loop: the condition is checked before every iteration.
    DoWhile {
        cond: Expr,
        body: Vec<Stmt>,
    },
    Leave,
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    /// The statement's first line, from its first token to the end of that line.
    pub span: SourceSpan,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Stmt {
    /// Expressions owned directly by this statement (not by nested blocks).
    pub fn exprs(&self) -> Vec<&Expr> {
        match &self.kind {
            StmtKind::Assign { target, value } => {
                let mut v = target.exprs();
                v.push(value);
                v
            }
            StmtKind::If { cond, .. } | StmtKind::DoWhile { cond, .. } => vec![cond],
            StmtKind::Switch { scrutinee, .. } => vec![scrutinee],
            StmtKind::Leave => Vec::new(),
        }
    }

    pub fn blocks(&self) -> Vec<&[Stmt]> {
        match &self.kind {
            StmtKind::Assign { .. } | StmtKind::Leave => Vec::new(),
            StmtKind::If {
                then_block,
                else_block,
                ..
            } => vec![then_block, else_block],
            StmtKind::Switch { cases, default, .. } => {
                let mut v: Vec<&[Stmt]> = cases.iter().map(|c| c.body.as_slice()).collect();
                v.push(default);
                v
            }
            StmtKind::DoWhile { body, .. } => vec![body],
        }
    }
}

/// Visit every statement in `block`, depth first, in source order.
pub fn walk_stmts<'a>(block: &'a [Stmt], f: &mut impl FnMut(&'a Stmt)) {
    for stmt in block {
        f(stmt);
        for inner in stmt.blocks() {
            walk_stmts(inner, f);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signedness {
    Unsigned,
    Signed,
}

#[derive(Debug, Clone)]
pub struct FieldDecl {
    pub name: String,
    pub width: u8,
    pub signedness: Signedness,
    pub span: SourceSpan,
}

impl PartialEq for FieldDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.width == other.width && self.signedness == other.signedness
    }
}

#[derive(Debug, Clone)]
pub struct InstructionDef {
    pub mnemonic: String,
    pub fields: Vec<FieldDecl>,
    pub body: Vec<Stmt>,
    /// Header line span.
    pub span: SourceSpan,
    /// Last source line belonging to the body.
    pub end_line: u32,
}

impl PartialEq for InstructionDef {
    fn eq(&self, other: &Self) -> bool {
        self.mnemonic == other.mnemonic && self.fields == other.fields && self.body == other.body
    }
}

impl InstructionDef {
    pub fn field(&self, name: &str) -> Option<&FieldDecl> {
        self.fields.iter().find(|f| f.name == name)
    }
}
