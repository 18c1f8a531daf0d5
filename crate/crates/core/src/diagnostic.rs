//! Source spans, error codes and the one-line diagnostic format
//! `FILE:LINE:COL: error[Ennn]: message`.

use std::fmt;
use std::sync::Arc;

/// A 1-based line/column position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub file: Arc<str>,
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(file: Arc<str>, start: Pos, end: Pos) -> Span {
        debug_assert!(start <= end);
        Span { file, start, end }
    }

    /// The smallest span covering both.
    pub fn to(&self, other: &Span) -> Span {
        Span {
            file: self.file.clone(),
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start.line, self.start.col)
    }
}

/// How bad a diagnostic is; ordered from least to most severe for exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    Warning,
    Type,
    Parse,
    Usage,
    Fuel,
}

impl Class {
    pub fn exit_code(self) -> i32 {
        match self {
            Class::Warning => 0,
            Class::Type => 1,
            Class::Parse => 2,
            Class::Usage => 3,
            Class::Fuel => 4,
        }
    }
}

macro_rules! error_codes {
    ($($variant:ident = $code:literal, $class:ident;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum ErrorCode {
            $($variant,)*
        }

        impl ErrorCode {
            pub fn as_str(self) -> &'static str {
                match self {
                    $(ErrorCode::$variant => $code,)*
                }
            }

            pub fn class(self) -> Class {
                match self {
                    $(ErrorCode::$variant => Class::$class,)*
                }
            }

            pub fn all() -> &'static [ErrorCode] {
                &[$(ErrorCode::$variant,)*]
            }
        }
    };
}

error_codes! {
    Lexical = "E0001", Parse;
    Syntax = "E0002", Parse;
    UnknownIdentifier = "E0101", Parse;
    DuplicateDeclaration = "E0102", Parse;
    OverApplied = "E0103", Parse;
    ShadowsConstructor = "E0104", Parse;
    NotAConstructor = "E0105", Parse;
    UnknownName = "E0201", Type;
    ArityMismatch = "E0202", Type;
    TypeMismatch = "E0203", Type;
    CtorNotAvailable = "E0204", Type;
    CtorAvailabilityStuck = "E0205", Type;
    CtorNotInData = "E0206", Type;
    ExpectedDataType = "E0207", Type;
    ImpossibleButAvailable = "E0208", Type;
    ImpossibleButStuck = "E0209", Type;
    DuplicateBinding = "E0210", Type;
    BodyWithImpossible = "E0211", Type;
    MissingBody = "E0212", Type;
    UnboundVariable = "E0213", Type;
    ExpectedFunctionType = "E0214", Type;
    CannotInfer = "E0215", Type;
    DuplicateName = "E0216", Type;
    ImpossibleInCtorRow = "E0217", Type;
    MissingCase = "E0301", Type;
    CannotSplit = "E0302", Type;
    UnreachableClause = "W0303", Warning;
    FieldScopeDifference = "W0401", Warning;
    FuelExhausted = "E0501", Fuel;
    Internal = "E0900", Type;
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rendered diagnostic.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub code: ErrorCode,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn new(code: ErrorCode, message: impl Into<String>, span: Option<Span>) -> Diagnostic {
        Diagnostic {
            code,
            message: message.into(),
            span,
        }
    }

    pub fn is_warning(&self) -> bool {
        self.code.class() == Class::Warning
    }

    /// Renders the diagnostic; `file` is used when the span is missing.
    pub fn render(&self, file: &str) -> String {
        let kind = if self.is_warning() {
            "warning"
        } else {
            "error"
        };
        let location = match &self.span {
            Some(span) => span.to_string(),
            None => format!("{file}:1:1"),
        };
        // keep one diagnostic per line
        let message = self.message.replace('\n', " ");
        format!("{location}: {kind}[{}]: {message}", self.code)
    }
}

/// The exit status for a set of diagnostics: the worst class wins.
pub fn exit_status<'a>(diags: impl IntoIterator<Item = &'a Diagnostic>) -> i32 {
    diags
        .into_iter()
        .map(|d| d.code.class())
        .max()
        .unwrap_or(Class::Warning)
        .exit_code()
}
