//! Recursive-descent parser with precedence climbing for expressions.
//!
//! Grammar, one statement per line, blocks delimited by INDENT/DEDENT:
//!
//! ```text
//! file        := instruction*
//! instruction := "instruction" NAME "(" [field {"," field}] ")" ":" NL block
//! field       := IDENT ":" INT ["signed" | "unsigned"]
//! block       := INDENT stmt+ DEDENT
//! stmt        := target "<-" expr NL
//!              | "if" expr "then" NL block ["else" (NL block | if)]
//!              | "switch" expr ":" NL INDENT case+ ["default" ":" NL block] DEDENT
//!              | "do" "while" expr ":" NL block
//!              | "leave" NL
//! case        := "case" INT ":" NL block
//! ```

use std::collections::HashSet;

use crate::ast::{
    BinOp, Expr, ExprKind, FieldDecl, InstructionDef, IntLit, Signedness, Stmt, StmtKind,
    SwitchCase, Target, TargetKind, UnOp,
};
use crate::diagnostics::{Diagnostic, ErrorCode};
use crate::lexer::{tokenize_file, SourceSpan, Token, TokenKind};

type PResult<T> = Result<T, Diagnostic>;

/// Parse a token stream into instruction definitions, in source order.
pub fn parse(tokens: &[Token]) -> Result<Vec<InstructionDef>, Vec<Diagnostic>> {
    let mut parser = Parser::new(tokens);
    let mut defs = Vec::new();
    let mut diagnostics = Vec::new();
    loop {
        parser.skip_newlines();
        match parser.peek_kind() {
            TokenKind::Eof => break,
            TokenKind::KwInstruction => match parser.parse_instruction() {
                Ok(def) => defs.push(def),
                Err(d) => {
                    diagnostics.push(d);
                    parser.recover_to_instruction();
                }
            },
            _ => {
                diagnostics.push(parser.unexpected(&[TokenKind::KwInstruction]));
                parser.recover_to_instruction();
            }
        }
    }
    if diagnostics.is_empty() {
        Ok(defs)
    } else {
        Err(diagnostics)
    }
}

/// Tokenize and parse one source file.
pub fn parse_source(file: &str, source: &str) -> Result<Vec<InstructionDef>, Vec<Diagnostic>> {
    let tokens = tokenize_file(file, source)?;
    parse(&tokens)
}

/// Parse a single expression starting at the head of `tokens`, stopping at the
/// first token that cannot extend it. Returns the expression and the number of
/// tokens consumed.
pub fn parse_expression(tokens: &[Token], min_precedence: u8) -> PResult<(Expr, usize)> {
    let mut parser = Parser::new(tokens);
    let expr = parser.parse_expression(min_precedence)?;
    Ok((expr, parser.pos))
}

pub struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    fields: HashSet<String>,
}

impl<'t> Parser<'t> {
    pub fn new(tokens: &'t [Token]) -> Self {
        assert!(
            tokens.last().is_some_and(|t| t.kind == TokenKind::Eof),
            "token stream must end in EOF"
        );
        Parser {
            tokens,
            pos: 0,
            fields: HashSet::new(),
        }
    }

    /// Treat `names` as declared operand fields while parsing expressions.
    pub fn with_fields<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.fields = names.into_iter().map(Into::into).collect();
        self
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_kind(&self) -> TokenKind {
        self.peek().kind
    }

    fn peek_nth_kind(&self, n: usize) -> TokenKind {
        self.tokens[(self.pos + n).min(self.tokens.len() - 1)].kind
    }

    fn bump(&mut self) -> &'t Token {
        let tok = self.peek();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'t Token> {
        if self.peek_kind() == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[kind]))
        }
    }

    fn unexpected(&self, expected: &[TokenKind]) -> Diagnostic {
        let found = self.peek();
        let mut names: Vec<&str> = expected.iter().map(|k| k.describe()).collect();
        names.dedup();
        let found_text = if found.lexeme.is_empty() || found.kind == TokenKind::Newline {
            found.kind.describe().to_string()
        } else {
            format!("`{}`", found.lexeme)
        };
        Diagnostic::error(
            ErrorCode::UnexpectedToken,
            found.span.clone(),
            format!("expected {}, found {}", names.join(" or "), found_text),
        )
    }

    fn skip_newlines(&mut self) {
        while self.peek_kind() == TokenKind::Newline {
            self.bump();
        }
    }

    fn recover_to_instruction(&mut self) {
        self.bump();
        loop {
            let tok = self.peek();
            match tok.kind {
                TokenKind::Eof => return,
                TokenKind::KwInstruction if tok.span.column == 1 => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Span from token `start` through the last token before the current one.
    fn span_from(&self, start: usize) -> SourceSpan {
        let first = &self.tokens[start].span;
        let last_idx = self.pos.saturating_sub(1).max(start);
        let last = &self.tokens[last_idx].span;
        if last.line == first.line && last.end_column() >= first.column {
            first.join(last)
        } else {
            first.clone()
        }
    }

    pub fn parse_instruction(&mut self) -> PResult<InstructionDef> {
        let start = self.pos;
        self.expect(TokenKind::KwInstruction)?;
        let name_tok = self.expect(TokenKind::Ident)?;
        if !valid_mnemonic(&name_tok.lexeme) {
            return Err(Diagnostic::error(
                ErrorCode::UnexpectedToken,
                name_tok.span.clone(),
                format!("`{}` is not a valid mnemonic", name_tok.lexeme),
            ));
        }
        self.expect(TokenKind::LParen)?;
        let mut fields: Vec<FieldDecl> = Vec::new();
        if self.peek_kind() != TokenKind::RParen {
            loop {
                let field = self.parse_field()?;
                if fields.iter().any(|f| f.name == field.name) {
                    return Err(Diagnostic::error(
                        ErrorCode::DuplicateField,
                        field.span,
                        format!("operand field `{}` declared twice", field.name),
                    ));
                }
                fields.push(field);
                if self.peek_kind() == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::Colon)?;
        let span = self.span_from(start);
        self.expect(TokenKind::Newline)?;
        self.fields = fields.iter().map(|f| f.name.clone()).collect();
        let body = self.parse_block(&span)?;
        let end_line = self.tokens[..self.pos]
            .iter()
            .rev()
            .find(|t| t.kind != TokenKind::Newline && !t.kind.is_synthetic())
            .map_or(span.line, |t| t.span.line);
        Ok(InstructionDef {
            mnemonic: name_tok.lexeme.clone(),
            fields,
            body,
            span,
            end_line,
        })
    }

    fn parse_field(&mut self) -> PResult<FieldDecl> {
        let name = self.expect(TokenKind::Ident)?;
        self.expect(TokenKind::Colon)?;
        let width_tok = self.expect(TokenKind::IntLit)?;
        let width = width_tok.lexeme.parse::<u64>().unwrap_or(0);
        if !(1..=64).contains(&width) {
            return Err(Diagnostic::error(
                ErrorCode::WidthRange,
                width_tok.span.clone(),
                format!("field width {width} outside 1..64"),
            ));
        }
        let mut signedness = Signedness::Unsigned;
        let mut end = width_tok.span.clone();
        if self.peek_kind() == TokenKind::Ident {
            match self.peek().lexeme.as_str() {
                "signed" => signedness = Signedness::Signed,
                "unsigned" => {}
                _ => return Err(self.unexpected(&[TokenKind::Comma, TokenKind::RParen])),
            }
            end = self.bump().span.clone();
        }
        Ok(FieldDecl {
            name: name.lexeme.clone(),
            width: width as u8,
            signedness,
            span: name.span.join(&end),
        })
    }

    fn parse_block(&mut self, header: &SourceSpan) -> PResult<Vec<Stmt>> {
        if self.peek_kind() != TokenKind::Indent {
            return Err(Diagnostic::error(
                ErrorCode::MissingBody,
                header.clone(),
                "expected an indented block after this line",
            ));
        }
        self.bump();
        let mut body = Vec::new();
        while self.peek_kind() != TokenKind::Dedent {
            body.push(self.parse_stmt()?);
        }
        self.bump();
        Ok(body)
    }

    pub fn parse_stmt(&mut self) -> PResult<Stmt> {
        match self.peek_kind() {
            TokenKind::KwIf => self.parse_if(),
            TokenKind::KwSwitch => self.parse_switch(),
            TokenKind::KwDo => self.parse_do_while(),
            TokenKind::KwLeave => {
                let start = self.pos;
                self.bump();
                let span = self.span_from(start);
                self.expect(TokenKind::Newline)?;
                Ok(Stmt {
                    kind: StmtKind::Leave,
                    span,
                })
            }
            TokenKind::Ident | TokenKind::LParen => self.parse_assign(),
            _ => Err(self.unexpected(&[
                TokenKind::Ident,
                TokenKind::KwIf,
                TokenKind::KwSwitch,
                TokenKind::KwDo,
                TokenKind::KwLeave,
            ])),
        }
    }

    fn parse_assign(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        let lhs = self.parse_expression(0)?;
        let target = self.to_target(lhs)?;
        self.expect(TokenKind::LArrow)?;
        let value = self.parse_expression(0)?;
        let span = self.span_from(start);
        self.expect(TokenKind::Newline)?;
        Ok(Stmt {
            kind: StmtKind::Assign { target, value },
            span,
        })
    }

    fn to_target(&self, expr: Expr) -> PResult<Target> {
        let span = expr.span.clone();
        let kind = match expr.kind {
            ExprKind::Var(name) | ExprKind::FieldRef(name) | ExprKind::ParenVar(name) => {
                TargetKind::Var(name)
            }
            ExprKind::RegRead(name) => TargetKind::RegWrite(name),
            ExprKind::Call { callee, args } => TargetKind::Call { callee, args },
            ExprKind::BitSlice { base, hi, lo } => match base.kind {
                ExprKind::Var(name) | ExprKind::FieldRef(name) => TargetKind::Slice {
                    name,
                    hi: *hi,
                    lo: *lo,
                },
                _ => return Err(bad_target(span)),
            },
            _ => return Err(bad_target(span)),
        };
        Ok(Target {
            kind,
            span,
            ty: None,
        })
    }

    fn parse_if(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        self.expect(TokenKind::KwIf)?;
        let cond = self.parse_expression(0)?;
        if self.peek_kind() != TokenKind::KwThen {
            return Err(Diagnostic::error(
                ErrorCode::MissingThen,
                cond.span.after(),
                "expected `then` after the condition",
            ));
        }
        self.bump();
        let span = self.span_from(start);
        self.expect(TokenKind::Newline)?;
        let then_block = self.parse_block(&span)?;
        let mut else_block = Vec::new();
        if self.peek_kind() == TokenKind::KwElse {
            let else_start = self.pos;
            self.bump();
            if self.peek_kind() == TokenKind::KwIf {
                else_block.push(self.parse_if()?);
            } else {
                let else_span = self.span_from(else_start);
                self.expect(TokenKind::Newline)?;
                else_block = self.parse_block(&else_span)?;
            }
        }
        Ok(Stmt {
            kind: StmtKind::If {
                cond,
                then_block,
                else_block,
            },
            span,
        })
    }

    fn parse_switch(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        self.expect(TokenKind::KwSwitch)?;
        let scrutinee = self.parse_expression(0)?;
        self.expect(TokenKind::Colon)?;
        let span = self.span_from(start);
        self.expect(TokenKind::Newline)?;
        if self.peek_kind() != TokenKind::Indent {
            return Err(Diagnostic::error(
                ErrorCode::MissingBody,
                span,
                "expected an indented block of cases",
            ));
        }
        self.bump();
        let mut cases = Vec::new();
        while self.peek_kind() == TokenKind::KwCase {
            let case_start = self.pos;
            self.bump();
            let lit_tok = self.peek();
            let value = match literal(lit_tok) {
                Some(v) => v,
                None => return Err(self.unexpected(&[TokenKind::IntLit])),
            };
            self.bump();
            self.expect(TokenKind::Colon)?;
            let case_span = self.span_from(case_start);
            self.expect(TokenKind::Newline)?;
            let body = self.parse_block(&case_span)?;
            cases.push(SwitchCase {
                value,
                span: case_span,
                body,
            });
        }
        if cases.is_empty() {
            return Err(self.unexpected(&[TokenKind::KwCase]));
        }
        let mut default = Vec::new();
        if self.peek_kind() == TokenKind::KwDefault {
            let default_start = self.pos;
            self.bump();
            self.expect(TokenKind::Colon)?;
            let default_span = self.span_from(default_start);
            self.expect(TokenKind::Newline)?;
            default = self.parse_block(&default_span)?;
        }
        if self.peek_kind() != TokenKind::Dedent {
            return Err(self.unexpected(&[TokenKind::KwCase, TokenKind::KwDefault, TokenKind::Dedent]));
        }
        self.bump();
        Ok(Stmt {
            kind: StmtKind::Switch {
                scrutinee,
                cases,
                default,
            },
            span,
        })
    }

    fn parse_do_while(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        self.expect(TokenKind::KwDo)?;
        self.expect(TokenKind::KwWhile)?;
        let cond = self.parse_expression(0)?;
        self.expect(TokenKind::Colon)?;
        let span = self.span_from(start);
        self.expect(TokenKind::Newline)?;
        let body = self.parse_block(&span)?;
        Ok(Stmt {
            kind: StmtKind::DoWhile { cond, body },
            span,
        })
    }

    /// Precedence climbing: parse the longest expression whose binary
    /// operators all bind at least as tightly as `min_precedence`.
    pub fn parse_expression(&mut self, min_precedence: u8) -> PResult<Expr> {
        let mut lhs = self.parse_unary()?;
        let mut chained_comparison = false;
        while let Some(op) = binary_op(self.peek_kind()) {
            let prec = op.precedence();
            if prec < min_precedence {
                break;
            }
            if op.is_comparison() && chained_comparison {
                return Err(Diagnostic::error(
                    ErrorCode::UnexpectedToken,
                    self.peek().span.clone(),
                    "comparison operators do not chain; parenthesize one side",
                ));
            }
            self.bump();
            let rhs = self.parse_expression(prec + 1)?;
            chained_comparison |= op.is_comparison();
            let span = lhs.span.join(&rhs.span);
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> PResult<Expr> {
        let op = match self.peek_kind() {
            TokenKind::Minus => UnOp::Neg,
            TokenKind::Not => UnOp::Not,
            _ => return self.parse_postfix(),
        };
        let op_span = self.bump().span.clone();
        let operand = self.parse_unary()?;
        let span = op_span.join(&operand.span);
        Ok(Expr::new(
            ExprKind::Unary {
                op,
                operand: Box::new(operand),
            },
            span,
        ))
    }

    fn parse_postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.parse_primary()?;
        while self.peek_kind() == TokenKind::LBracket {
            self.bump();
            let hi = self.parse_expression(0)?;
            let lo = if self.peek_kind() == TokenKind::Colon {
                self.bump();
                self.parse_expression(0)?
            } else {
                hi.clone()
            };
            let close = self.expect(TokenKind::RBracket)?;
            let span = expr.span.join(&close.span);
            expr = Expr::new(
                ExprKind::BitSlice {
                    base: Box::new(expr),
                    hi: Box::new(hi),
                    lo: Box::new(lo),
                },
                span,
            );
        }
        Ok(expr)
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::IntLit | TokenKind::HexLit | TokenKind::BinLit => {
                self.bump();
                let lit = literal(tok).expect("lexer validated literal");
                Ok(Expr::new(ExprKind::IntLit(lit), tok.span.clone()))
            }
            TokenKind::Ident => {
                self.bump();
                if self.peek_kind() == TokenKind::LParen {
                    self.bump();
                    let mut args = Vec::new();
                    if self.peek_kind() != TokenKind::RParen {
                        loop {
                            args.push(self.parse_expression(0)?);
                            if self.peek_kind() == TokenKind::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    let close = self
                        .expect(TokenKind::RParen)
                        .map_err(|_| self.unexpected(&[TokenKind::Comma, TokenKind::RParen]))?;
                    Ok(Expr::new(
                        ExprKind::Call {
                            callee: tok.lexeme.clone(),
                            args,
                        },
                        tok.span.join(&close.span),
                    ))
                } else if self.fields.contains(&tok.lexeme) {
                    Ok(Expr::new(ExprKind::FieldRef(tok.lexeme.clone()), tok.span.clone()))
                } else {
                    Ok(Expr::new(ExprKind::Var(tok.lexeme.clone()), tok.span.clone()))
                }
            }
            TokenKind::LParen => {
                let open = self.bump().span.clone();
                if self.peek_kind() == TokenKind::Ident && self.peek_nth_kind(1) == TokenKind::RParen
                {
                    let name = self.bump().lexeme.clone();
                    let close = self.bump().span.clone();
                    let kind = if self.fields.contains(&name) {
                        ExprKind::RegRead(name)
                    } else {
                        ExprKind::ParenVar(name)
                    };
                    return Ok(Expr::new(kind, open.join(&close)));
                }
                let mut inner = self.parse_expression(0)?;
                let close = self
                    .expect(TokenKind::RParen)
                    .map_err(|_| self.unexpected(&[TokenKind::RParen]))?;
                inner.span = open.join(&close.span);
                Ok(inner)
            }
            _ => Err(Diagnostic::error(
                ErrorCode::UnexpectedToken,
                tok.span.clone(),
                format!(
                    "expected expression, found {}",
                    if tok.lexeme.is_empty() || tok.kind == TokenKind::Newline {
                        tok.kind.describe().to_string()
                    } else {
                        format!("`{}`", tok.lexeme)
                    }
                ),
            )),
        }
    }
}

fn bad_target(span: SourceSpan) -> Diagnostic {
    Diagnostic::error(
        ErrorCode::UnexpectedToken,
        span,
        "invalid assignment target; expected a name, `(field)`, a slice of a name, or an assignable builtin",
    )
}

fn binary_op(kind: TokenKind) -> Option<BinOp> {
    Some(match kind {
        TokenKind::Plus => BinOp::Add,
        TokenKind::Minus => BinOp::Sub,
        TokenKind::Star => BinOp::Mul,
        TokenKind::Slash => BinOp::Div,
        TokenKind::Percent => BinOp::Mod,
        TokenKind::Amp => BinOp::And,
        TokenKind::Pipe => BinOp::Or,
        TokenKind::Caret => BinOp::Xor,
        TokenKind::Concat => BinOp::Concat,
        TokenKind::Eq => BinOp::Eq,
        TokenKind::Neq => BinOp::Neq,
        TokenKind::Lt => BinOp::Lt,
        TokenKind::Gt => BinOp::Gt,
        TokenKind::Le => BinOp::Le,
        TokenKind::Ge => BinOp::Ge,
        _ => return None,
    })
}

fn literal(tok: &Token) -> Option<IntLit> {
    let text = tok.lexeme.as_str();
    match tok.kind {
        TokenKind::IntLit => text.parse().ok().map(IntLit::dec),
        TokenKind::HexLit => {
            let digits = &text[2..];
            u64::from_str_radix(digits, 16)
                .ok()
                .map(|v| IntLit::hex(v, digits.len() as u8))
        }
        TokenKind::BinLit => {
            let digits = &text[2..];
            u64::from_str_radix(digits, 2)
                .ok()
                .map(|v| IntLit::bin(v, digits.len() as u8))
        }
        _ => None,
    }
}

fn valid_mnemonic(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}
