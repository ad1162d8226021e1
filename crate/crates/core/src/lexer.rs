//! Tokenizer for RTL source.
//!
//! Leading whitespace is turned into explicit `Indent`/`Dedent` tokens using
//! the usual stack of open indentation columns, so the parser never has to
//! look at raw whitespace. Tabs are rejected in indentation.

use std::fmt;
use std::sync::Arc;

use crate::diagnostics::{Diagnostic, ErrorCode};

/// A single-line region of source text. Columns are 1-based and count chars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<Arc<str>>, line: u32, column: u32, length: u32) -> Self {
        SourceSpan {
            file: file.into(),
            line,
            column,
            length,
        }
    }

    /// One past the last column covered by this span.
    pub fn end_column(&self) -> u32 {
        self.column + self.length
    }

    /// Smallest span covering both `self` and `other`. Both must be on the same line.
    pub fn join(&self, other: &SourceSpan) -> SourceSpan {
        debug_assert_eq!(self.line, other.line);
        let start = self.column.min(other.column);
        let end = self.end_column().max(other.end_column());
        SourceSpan {
            file: self.file.clone(),
            line: self.line,
            column: start,
            length: end - start,
        }
    }

    /// Zero-length span sitting right after this one.
    pub fn after(&self) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            line: self.line,
            column: self.end_column(),
            length: 0,
        }
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.line == other.line
            && self.column <= other.column
            && other.end_column() <= self.end_column()
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    IntLit,
    BinLit,
    HexLit,
    LArrow,
    Eq,
    Neq,
    Lt,
    Gt,
    Le,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Amp,
    Pipe,
    Caret,
    Not,
    Concat,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    KwIf,
    KwThen,
    KwElse,
    KwDo,
    KwWhile,
    KwSwitch,
    KwCase,
    KwDefault,
    KwLeave,
    KwInstruction,
    Newline,
    Indent,
    Dedent,
    Eof,
}

impl TokenKind {
    pub fn keyword(word: &str) -> Option<TokenKind> {
        Some(match word {
            "if" => TokenKind::KwIf,
            "then" => TokenKind::KwThen,
            "else" => TokenKind::KwElse,
            "do" => TokenKind::KwDo,
            "while" => TokenKind::KwWhile,
            "switch" => TokenKind::KwSwitch,
            "case" => TokenKind::KwCase,
            "default" => TokenKind::KwDefault,
            "leave" => TokenKind::KwLeave,
            "instruction" => TokenKind::KwInstruction,
            _ => return None,
        })
    }

    /// Human-readable name used in "expected ..." messages.
    pub fn describe(self) -> &'static str {
        use TokenKind::*;
        match self {
            Ident => "identifier",
            IntLit | BinLit | HexLit => "integer literal",
            LArrow => "'<-'",
            Eq => "'='",
            Neq => "'!='",
            Lt => "'<'",
            Gt => "'>'",
            Le => "'<='",
            Ge => "'>='",
            Plus => "'+'",
            Minus => "'-'",
            Star => "'*'",
            Slash => "'/'",
            Percent => "'%'",
            Amp => "'&'",
            Pipe => "'|'",
            Caret => "'^'",
            Not => "'!'",
            Concat => "'||'",
            LParen => "'('",
            RParen => "')'",
            LBracket => "'['",
            RBracket => "']'",
            Colon => "':'",
            Comma => "','",
            KwIf => "'if'",
            KwThen => "'then'",
            KwElse => "'else'",
            KwDo => "'do'",
            KwWhile => "'while'",
            KwSwitch => "'switch'",
            KwCase => "'case'",
            KwDefault => "'default'",
            KwLeave => "'leave'",
            KwInstruction => "'instruction'",
            Newline => "end of line",
            Indent => "indented block",
            Dedent => "end of block",
            Eof => "end of file",
        }
    }

    pub fn is_synthetic(self) -> bool {
        matches!(self, TokenKind::Indent | TokenKind::Dedent | TokenKind::Eof)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: SourceSpan,
}

/// Tokenize `source` with diagnostics attributed to `<input>`.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    tokenize_file("<input>", source)
}

pub fn tokenize_file(file: &str, source: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut lexer = Lexer {
        file: Arc::from(file),
        tokens: Vec::new(),
        diagnostics: Vec::new(),
        indents: vec![0],
    };
    lexer.run(&source.replace("\r\n", "\n"));
    if lexer.diagnostics.is_empty() {
        Ok(lexer.tokens)
    } else {
        Err(lexer.diagnostics)
    }
}

struct Lexer {
    file: Arc<str>,
    tokens: Vec<Token>,
    diagnostics: Vec<Diagnostic>,
    indents: Vec<u32>,
}

impl Lexer {
    fn span(&self, line: u32, column: u32, length: u32) -> SourceSpan {
        SourceSpan::new(self.file.clone(), line, column, length)
    }

    fn push(&mut self, kind: TokenKind, lexeme: impl Into<String>, span: SourceSpan) {
        self.tokens.push(Token {
            kind,
            lexeme: lexeme.into(),
            span,
        });
    }

    fn error(&mut self, code: ErrorCode, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic::error(code, span, message));
    }

    fn run(&mut self, source: &str) {
        let mut line_no = 0u32;
        let mut rest = source;
        while !rest.is_empty() {
            line_no += 1;
            let (line, terminated) = match rest.find('\n') {
                Some(i) => {
                    let l = &rest[..i];
                    rest = &rest[i + 1..];
                    (l, true)
                }
                None => {
                    let l = rest;
                    rest = "";
                    (l, false)
                }
            };
            self.line(line_no, line, terminated);
        }
        let eof_line = line_no + 1;
        while self.indents.len() > 1 {
            self.indents.pop();
            let span = self.span(eof_line, 1, 0);
            self.push(TokenKind::Dedent, "", span);
        }
        let span = self.span(eof_line, 1, 0);
        self.push(TokenKind::Eof, "", span);
    }

    fn line(&mut self, line_no: u32, line: &str, terminated: bool) {
        let chars: Vec<char> = line.chars().collect();
        let mut indent = 0usize;
        while indent < chars.len() && (chars[indent] == ' ' || chars[indent] == '\t') {
            indent += 1;
        }
        // blank and comment-only lines are invisible
        if indent == chars.len() || chars[indent] == '#' {
            return;
        }
        if let Some(tab) = chars[..indent].iter().position(|&c| c == '\t') {
            let span = self.span(line_no, tab as u32 + 1, 1);
            self.error(
                ErrorCode::TabInIndent,
                span,
                "tab character in indentation; indent with spaces only",
            );
            return;
        }

        let column = indent as u32;
        let top = *self.indents.last().expect("indent stack never empty");
        if column > top {
            self.indents.push(column);
            let span = self.span(line_no, 1, column);
            self.push(TokenKind::Indent, "", span);
        } else if column < top {
            while *self.indents.last().unwrap() > column {
                self.indents.pop();
                let span = self.span(line_no, 1, 0);
                self.push(TokenKind::Dedent, "", span);
            }
            if *self.indents.last().unwrap() != column {
                let span = self.span(line_no, 1, column);
                self.error(
                    ErrorCode::DedentMismatch,
                    span,
                    format!(
                        "dedent to column {} does not match any enclosing indentation level",
                        column + 1
                    ),
                );
                // recover by treating this column as a fresh level
                self.indents.push(column);
            }
        }

        let end = self.line_tokens(line_no, &chars, indent);
        let span = self.span(line_no, end as u32 + 1, u32::from(terminated));
        self.push(TokenKind::Newline, if terminated { "\n" } else { "" }, span);
    }

    /// Lex the tokens of one line starting at char index `start`. Returns the
    /// index just past the last significant character.
    fn line_tokens(&mut self, line_no: u32, chars: &[char], start: usize) -> usize {
        let mut i = start;
        let mut end = start;
        while i < chars.len() {
            let c = chars[i];
            let col = i as u32 + 1;
            if c == ' ' || c == '\t' {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            let begin = i;
            if c.is_ascii_alphabetic() || c == '_' {
                let after_instruction = self
                    .tokens
                    .last()
                    .is_some_and(|t| t.kind == TokenKind::KwInstruction && t.span.line == line_no);
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric()
                        || chars[i] == '_'
                        || (after_instruction && chars[i] == '.'))
                {
                    i += 1;
                }
                let word: String = chars[begin..i].iter().collect();
                let kind = TokenKind::keyword(&word).unwrap_or(TokenKind::Ident);
                let span = self.span(line_no, col, (i - begin) as u32);
                self.push(kind, word, span);
            } else if c.is_ascii_digit() {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[begin..i].iter().collect();
                let span = self.span(line_no, col, (i - begin) as u32);
                self.number(text, span);
            } else {
                let next = chars.get(i + 1).copied();
                let (kind, len) = match (c, next) {
                    ('<', Some('-')) => (TokenKind::LArrow, 2),
                    ('<', Some('=')) => (TokenKind::Le, 2),
                    ('>', Some('=')) => (TokenKind::Ge, 2),
                    ('!', Some('=')) => (TokenKind::Neq, 2),
                    ('|', Some('|')) => (TokenKind::Concat, 2),
                    ('<', _) => (TokenKind::Lt, 1),
                    ('>', _) => (TokenKind::Gt, 1),
                    ('=', _) => (TokenKind::Eq, 1),
                    ('!', _) => (TokenKind::Not, 1),
                    ('|', _) => (TokenKind::Pipe, 1),
                    ('+', _) => (TokenKind::Plus, 1),
                    ('-', _) => (TokenKind::Minus, 1),
                    ('*', _) => (TokenKind::Star, 1),
                    ('/', _) => (TokenKind::Slash, 1),
                    ('%', _) => (TokenKind::Percent, 1),
                    ('&', _) => (TokenKind::Amp, 1),
                    ('^', _) => (TokenKind::Caret, 1),
                    ('(', _) => (TokenKind::LParen, 1),
                    (')', _) => (TokenKind::RParen, 1),
                    ('[', _) => (TokenKind::LBracket, 1),
                    (']', _) => (TokenKind::RBracket, 1),
                    (':', _) => (TokenKind::Colon, 1),
                    (',', _) => (TokenKind::Comma, 1),
                    _ => {
                        let span = self.span(line_no, col, 1);
                        self.error(
                            ErrorCode::BadChar,
                            span,
                            format!("unexpected character {c:?}"),
                        );
                        i += 1;
                        end = i;
                        continue;
                    }
                };
                i += len;
                let lexeme: String = chars[begin..i].iter().collect();
                let span = self.span(line_no, col, len as u32);
                self.push(kind, lexeme, span);
            }
            end = i;
        }
        end
    }

    fn number(&mut self, text: String, span: SourceSpan) {
        let (kind, digits, radix, max_digits) = if let Some(d) = strip_prefix2(&text, "0x") {
            (TokenKind::HexLit, d, 16, 16)
        } else if let Some(d) = strip_prefix2(&text, "0b") {
            (TokenKind::BinLit, d, 2, 64)
        } else {
            (TokenKind::IntLit, text.as_str(), 10, usize::MAX)
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
            self.error(
                ErrorCode::UnterminatedLiteral,
                span,
                format!("malformed or unterminated numeric literal `{text}`"),
            );
            return;
        }
        if digits.len() > max_digits || u64::from_str_radix(digits, radix).is_err() {
            self.error(
                ErrorCode::LiteralRange,
                span,
                format!("literal `{text}` does not fit in 64 bits"),
            );
            return;
        }
        self.push(kind, text, span);
    }
}

fn strip_prefix2<'a>(text: &'a str, prefix: &str) -> Option<&'a str> {
    text.strip_prefix(prefix)
        .or_else(|| text.strip_prefix(&prefix.to_ascii_uppercase()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().iter().map(|t| t.kind).collect()
    }

    fn codes(src: &str) -> Vec<(ErrorCode, u32, u32)> {
        tokenize(src)
            .unwrap_err()
            .into_iter()
            .map(|d| (d.code, d.span.line, d.span.column))
            .collect()
    }

    #[test]
    fn listing_assignment_line() {
        let toks = tokenize("EA <- b + EXTS(D)").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![Ident, LArrow, Ident, Plus, Ident, LParen, Ident, RParen, Newline, Eof]
        );
        let lexemes: Vec<_> = toks.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(&lexemes[..8], &["EA", "<-", "b", "+", "EXTS", "(", "D", ")"]);
    }

    #[test]
    fn empty_input_is_just_eof() {
        assert_eq!(kinds(""), vec![Eof]);
        assert_eq!(kinds("\n\n   \n# only a comment\n"), vec![Eof]);
    }

    #[test]
    fn listing_if_else_blocks() {
        let toks = tokenize("if RA = 0 then\n    b <- 0\nelse\n    b <- (RA)").unwrap();
        let count = |k| toks.iter().filter(|t| t.kind == k).count();
        assert_eq!(count(Indent), 2);
        assert_eq!(count(Dedent), 2);
        let tail: Vec<_> = toks
            .iter()
            .rev()
            .skip_while(|t| t.kind != RParen)
            .take(3)
            .map(|t| (t.kind, t.lexeme.clone()))
            .collect();
        assert_eq!(
            tail,
            vec![
                (RParen, ")".to_string()),
                (Ident, "RA".to_string()),
                (LParen, "(".to_string())
            ]
        );
    }

    #[test]
    fn tab_in_indent_is_rejected() {
        assert_eq!(codes("\tb <- 0"), vec![(ErrorCode::TabInIndent, 1, 1)]);
        assert_eq!(codes("  \tb <- 0"), vec![(ErrorCode::TabInIndent, 1, 3)]);
    }

    #[test]
    fn tabs_inside_a_line_are_whitespace() {
        assert_eq!(kinds("a\t<-\tb"), vec![Ident, LArrow, Ident, Newline, Eof]);
    }

    #[test]
    fn bad_char() {
        assert_eq!(codes("a <- b $ c"), vec![(ErrorCode::BadChar, 1, 8)]);
        assert_eq!(codes("a <- ¬b"), vec![(ErrorCode::BadChar, 1, 6)]);
    }

    #[test]
    fn dedent_mismatch() {
        let src = "if a then\n        b <- 0\n    c <- 1\n";
        assert_eq!(codes(src), vec![(ErrorCode::DedentMismatch, 3, 1)]);
    }

    #[test]
    fn malformed_literals() {
        assert_eq!(codes("a <- 0x"), vec![(ErrorCode::UnterminatedLiteral, 1, 6)]);
        assert_eq!(codes("a <- 0b102"), vec![(ErrorCode::UnterminatedLiteral, 1, 6)]);
        assert_eq!(codes("a <- 12ab"), vec![(ErrorCode::UnterminatedLiteral, 1, 6)]);
        assert_eq!(
            codes("a <- 0x11112222333344445"),
            vec![(ErrorCode::LiteralRange, 1, 6)]
        );
        assert_eq!(
            codes("a <- 18446744073709551616"),
            vec![(ErrorCode::LiteralRange, 1, 6)]
        );
    }

    #[test]
    fn maximal_munch() {
        assert_eq!(kinds("a||b"), vec![Ident, Concat, Ident, Newline, Eof]);
        assert_eq!(kinds("a | | b"), vec![Ident, Pipe, Pipe, Ident, Newline, Eof]);
        assert_eq!(kinds("a<-b"), vec![Ident, LArrow, Ident, Newline, Eof]);
        assert_eq!(kinds("a < -b"), vec![Ident, Lt, Minus, Ident, Newline, Eof]);
        assert_eq!(kinds("a<=b!=c>=d"), vec![Ident, Le, Ident, Neq, Ident, Ge, Ident, Newline, Eof]);
    }

    #[test]
    fn keywords_are_reserved() {
        assert_eq!(
            kinds("if then else do while switch case default leave instruction"),
            vec![
                KwIf, KwThen, KwElse, KwDo, KwWhile, KwSwitch, KwCase, KwDefault, KwLeave,
                KwInstruction, Newline, Eof
            ]
        );
        assert_eq!(kinds("iffy"), vec![Ident, Newline, Eof]);
    }

    #[test]
    fn mnemonic_may_carry_a_dot() {
        let toks = tokenize("instruction add.(RT:5):").unwrap();
        assert_eq!(toks[1].kind, Ident);
        assert_eq!(toks[1].lexeme, "add.");
        // outside a header a dot is not part of the alphabet
        assert_eq!(codes("a.b <- 1"), vec![(ErrorCode::BadChar, 1, 2)]);
    }

    #[test]
    fn comments_and_crlf() {
        assert_eq!(
            kinds("a <- 1 # trailing\r\n# whole line\r\nb <- 2\r\n"),
            vec![Ident, LArrow, IntLit, Newline, Ident, LArrow, IntLit, Newline, Eof]
        );
    }

    #[test]
    fn spans_are_one_based() {
        let toks = tokenize("x\n  yy <- 0x1F").unwrap();
        let yy = toks.iter().find(|t| t.lexeme == "yy").unwrap();
        assert_eq!((yy.span.line, yy.span.column, yy.span.length), (2, 3, 2));
        let lit = toks.iter().find(|t| t.kind == HexLit).unwrap();
        assert_eq!((lit.span.column, lit.span.length), (9, 4));
    }

    #[test]
    fn dedents_close_at_eof() {
        let k = kinds("a\n  b\n    c\n");
        assert_eq!(k.iter().filter(|&&k| k == Indent).count(), 2);
        assert_eq!(&k[k.len() - 3..], &[Dedent, Dedent, Eof]);
    }
}
