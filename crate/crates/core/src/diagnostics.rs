//! Uniform error currency shared by every stage of the pipeline.

use std::fmt;

use serde::Serialize;

use crate::lexer::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

macro_rules! error_codes {
    ($($variant:ident => $text:literal,)*) => {
        /// Stable diagnostic codes. The text form never changes between releases.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ErrorCode {
            $($variant,)*
        }

        impl ErrorCode {
            pub const ALL: &'static [ErrorCode] = &[$(ErrorCode::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ErrorCode::$variant => $text,)*
                }
            }

            pub fn from_str_code(code: &str) -> Option<ErrorCode> {
                match code {
                    $($text => Some(ErrorCode::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

error_codes! {
    // lexer
    TabInIndent => "TAB_IN_INDENT",
    BadChar => "BAD_CHAR",
    DedentMismatch => "DEDENT_MISMATCH",
    UnterminatedLiteral => "UNTERMINATED_LITERAL",
    LiteralRange => "LITERAL_RANGE",
    // parser
    UnexpectedToken => "UNEXPECTED_TOKEN",
    MissingThen => "MISSING_THEN",
    MissingBody => "MISSING_BODY",
    DuplicateField => "DUPLICATE_FIELD",
    // semantics
    UseBeforeAssign => "USE_BEFORE_ASSIGN",
    UnknownCallee => "UNKNOWN_CALLEE",
    BadArity => "BAD_ARITY",
    LeaveOutsideLoop => "LEAVE_OUTSIDE_LOOP",
    AssignToField => "ASSIGN_TO_FIELD",
    ReservedName => "RESERVED_NAME",
    DuplicateCase => "DUPLICATE_CASE",
    SliceOutOfRange => "SLICE_OUT_OF_RANGE",
    Overwide => "OVERWIDE",
    WidthRange => "WIDTH_RANGE",
    BadAccessSize => "BAD_ACCESS_SIZE",
    DuplicateInstruction => "DUPLICATE_INSTRUCTION",
    // interpreter
    DivByZero => "DIV_BY_ZERO",
    StepLimitExceeded => "STEP_LIMIT_EXCEEDED",
    BadBinding => "BAD_BINDING",
    // driver / harness
    UnknownMnemonic => "UNKNOWN_MNEMONIC",
    MalformedSnapshot => "MALFORMED_SNAPSHOT",
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ErrorCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: ErrorCode,
    pub span: SourceSpan,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: ErrorCode, span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            span,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Flat record used by the structured diagnostics stream.
    pub fn to_record(&self) -> DiagnosticRecord<'_> {
        DiagnosticRecord {
            severity: self.severity,
            code: self.code,
            file: &self.span.file,
            line: self.span.line,
            column: self.span.column,
            length: self.span.length,
            message: &self.message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}: {}",
            self.span.file, self.span.line, self.span.column, self.code, self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Serialize)]
pub struct DiagnosticRecord<'a> {
    pub severity: Severity,
    pub code: ErrorCode,
    pub file: &'a str,
    pub line: u32,
    pub column: u32,
    pub length: u32,
    pub message: &'a str,
}
