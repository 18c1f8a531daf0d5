//! Source text to core declarations: lexing, parsing, printing and name
//! resolution.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod resolve;

use std::fmt;

use crate::diagnostic::{Diagnostic, ErrorCode, Span};

pub use parser::{parse_expr, parse_file};
pub use printer::{print_expr, print_file};
pub use resolve::{resolve, resolve_expr, Globals};

/// Source locations are ordinary diagnostic spans.
pub type SourceSpan = Span;

/// A lexical, syntax or resolution error.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub code: ErrorCode,
    pub message: String,
    pub span: Span,
}

impl ParseError {
    pub fn new(code: ErrorCode, message: impl Into<String>, span: Span) -> ParseError {
        ParseError {
            code,
            message: message.into(),
            span,
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::new(self.code, self.message.clone(), Some(self.span.clone()))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.span, self.code, self.message)
    }
}

impl std::error::Error for ParseError {}
