use std::fmt;
use std::sync::Arc;

use super::ParseError;
use crate::diagnostic::{ErrorCode, Pos, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Data,
    Def,
    Fn,
    Impossible,
    Type,
    LParen,
    RParen,
    Colon,
    Comma,
    Bar,
    Arrow,
    FatArrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Data => f.write_str("`data`"),
            Tok::Def => f.write_str("`def`"),
            Tok::Fn => f.write_str("`fn`"),
            Tok::Impossible => f.write_str("`impossible`"),
            Tok::Type => f.write_str("`Type`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens. The result always ends with `Eof`.
pub fn lex(file: &str, text: &str) -> Result<Vec<Token>, ParseError> {
    let file: Arc<str> = Arc::from(file);
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let span = |s: Pos, e: Pos| Span::new(file.clone(), s, e);
    while i < chars.len() {
        let c = chars[i];
        let start = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ':' => (Tok::Colon, 1),
            ',' => (Tok::Comma, 1),
            '|' => (Tok::Bar, 1),
            '→' => (Tok::Arrow, 1),
            '⇒' => (Tok::FatArrow, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '=' if chars.get(i + 1) == Some(&'>') => (Tok::FatArrow, 2),
            c if is_ident_start(c) => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| is_ident_continue(**c))
                    .count();
                let word: String = chars[i..i + len].iter().collect();
                let tok = match word.as_str() {
                    "data" => Tok::Data,
                    "def" => Tok::Def,
                    "fn" => Tok::Fn,
                    "impossible" => Tok::Impossible,
                    "Type" => Tok::Type,
                    _ => Tok::Ident(word),
                };
                (tok, len)
            }
            other => {
                let end = Pos { line, col: col + 1 };
                return Err(ParseError::new(
                    ErrorCode::Lexical,
                    format!("unexpected character `{}`", other.escape_default()),
                    span(start, end),
                ));
            }
        };
        i += len;
        col += len as u32;
        tokens.push(Token {
            tok,
            span: span(start, Pos { line, col }),
        });
    }
    let end = Pos { line, col };
    tokens.push(Token {
        tok: Tok::Eof,
        span: span(end, end),
    });
    Ok(tokens)
}
