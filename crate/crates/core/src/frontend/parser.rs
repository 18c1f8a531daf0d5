use super::ast::{Binder, ClauseSyn, Decl, Expr, ExprKind, Ident, Loc, Pat, Row};
use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::diagnostic::{ErrorCode, Span};

type PResult<T> = Result<T, ParseError>;

pub fn parse_file(file: &str, text: &str) -> PResult<Vec<Decl>> {
    let mut p = Parser::new(lex(file, text)?);
    let mut decls = Vec::new();
    while !p.at(&Tok::Eof) {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

/// Parses a standalone expression, such as the argument of `eval -e`.
pub fn parse_expr(file: &str, text: &str) -> PResult<Expr> {
    let mut p = Parser::new(lex(file, text)?);
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Parser {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(
            ErrorCode::Syntax,
            format!("expected {expected}, found {}", t.tok),
            t.span.clone(),
        )
    }

    fn expect(&mut self, t: Tok) -> PResult<Span> {
        if self.at(&t) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&t.to_string()))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                let span = self.bump().span;
                Ok(Ident {
                    name,
                    loc: Loc(span),
                })
            }
            _ => Err(self.error("an identifier")),
        }
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span.clone()
    }

    fn decl(&mut self) -> PResult<Decl> {
        let start = self.peek().span.clone();
        match self.peek().tok {
            Tok::Data => {
                self.bump();
                let name = self.ident()?;
                let params = self.binders()?;
                self.expect(Tok::Colon)?;
                self.expect(Tok::Type)?;
                let mut rows = Vec::new();
                while self.at(&Tok::Bar) {
                    rows.push(self.row()?);
                }
                Ok(Decl::Data {
                    name,
                    params,
                    rows,
                    loc: Loc(start.to(&self.prev_span())),
                })
            }
            Tok::Def => {
                self.bump();
                let name = self.ident()?;
                let params = self.binders()?;
                self.expect(Tok::Colon)?;
                let result = self.expr()?;
                let mut clauses = Vec::new();
                while self.at(&Tok::Bar) {
                    clauses.push(self.clause()?);
                }
                Ok(Decl::Def {
                    name,
                    params,
                    result,
                    clauses,
                    loc: Loc(start.to(&self.prev_span())),
                })
            }
            _ => Err(self.error("`data` or `def`")),
        }
    }

    /// A constructor row carries patterns when `=>` occurs before the next
    /// row or declaration.
    fn row_has_patterns(&self) -> bool {
        let mut depth = 0usize;
        for t in &self.tokens[self.pos..] {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => depth = depth.saturating_sub(1),
                Tok::FatArrow if depth == 0 => return true,
                Tok::Bar | Tok::Data | Tok::Def | Tok::Eof => return false,
                _ => {}
            }
        }
        false
    }

    fn row(&mut self) -> PResult<Row> {
        let start = self.expect(Tok::Bar)?;
        let patterns = if self.row_has_patterns() {
            let ps = self.patterns()?;
            self.expect(Tok::FatArrow)?;
            Some(ps)
        } else {
            None
        };
        let name = self.ident()?;
        let fields = self.binders()?;
        Ok(Row {
            patterns,
            name,
            fields,
            loc: Loc(start.to(&self.prev_span())),
        })
    }

    fn clause(&mut self) -> PResult<ClauseSyn> {
        let start = self.expect(Tok::Bar)?;
        let patterns = if self.at(&Tok::FatArrow) {
            Vec::new()
        } else {
            self.patterns()?
        };
        let body = if self.at(&Tok::FatArrow) {
            self.bump();
            Some(self.expr()?)
        } else {
            None
        };
        Ok(ClauseSyn {
            patterns,
            body,
            loc: Loc(start.to(&self.prev_span())),
        })
    }

    fn binders(&mut self) -> PResult<Vec<Binder>> {
        let mut out = Vec::new();
        while self.at(&Tok::LParen) {
            out.push(self.binder()?);
        }
        Ok(out)
    }

    fn binder(&mut self) -> PResult<Binder> {
        self.expect(Tok::LParen)?;
        let mut names = vec![self.ident()?];
        while matches!(self.peek().tok, Tok::Ident(_)) {
            names.push(self.ident()?);
        }
        self.expect(Tok::Colon)?;
        let ty = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(Binder { names, ty })
    }

    fn patterns(&mut self) -> PResult<Vec<Pat>> {
        let mut ps = vec![self.pattern()?];
        while self.at(&Tok::Comma) {
            self.bump();
            ps.push(self.pattern()?);
        }
        Ok(ps)
    }

    fn pattern(&mut self) -> PResult<Pat> {
        if self.at(&Tok::Impossible) {
            return Ok(Pat::Impossible(Loc(self.bump().span)));
        }
        let head = self.ident().map_err(|_| self.error("a pattern"))?;
        let mut args = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Ident(_) => args.push(Pat::Ident(self.ident()?, Vec::new())),
                Tok::Impossible => args.push(Pat::Impossible(Loc(self.bump().span))),
                Tok::LParen => {
                    self.bump();
                    args.push(self.pattern()?);
                    self.expect(Tok::RParen)?;
                }
                _ => break,
            }
        }
        Ok(Pat::Ident(head, args))
    }

    /// Looks past `(` for `x y ... :`.
    fn at_pi_binder(&self) -> bool {
        if !self.at(&Tok::LParen) {
            return false;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        k > 1 && self.peek_at(k) == &Tok::Colon
    }

    fn expr(&mut self) -> PResult<Expr> {
        let start = self.peek().span.clone();
        if self.at(&Tok::Fn) {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::FatArrow)?;
            let body = self.expr()?;
            let loc = Loc(start.to(body.span()));
            return Ok(Expr {
                kind: ExprKind::Lam(x, Box::new(body)),
                loc,
            });
        }
        if self.at_pi_binder() {
            let b = self.binder()?;
            self.expect(Tok::Arrow)?;
            let cod = self.expr()?;
            let loc = Loc(start.to(cod.span()));
            return Ok(Expr {
                kind: ExprKind::Pi(b.names, Box::new(b.ty), Box::new(cod)),
                loc,
            });
        }
        let lhs = self.app()?;
        if self.at(&Tok::Arrow) {
            self.bump();
            let rhs = self.expr()?;
            let loc = Loc(start.to(rhs.span()));
            return Ok(Expr {
                kind: ExprKind::Arrow(Box::new(lhs), Box::new(rhs)),
                loc,
            });
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek().tok, Tok::Ident(_) | Tok::Type | Tok::LParen)
    }

    fn app(&mut self) -> PResult<Expr> {
        if !self.starts_atom() {
            return Err(self.error("an expression"));
        }
        let head = self.atom()?;
        let mut args = Vec::new();
        while self.starts_atom() {
            args.push(self.atom()?);
        }
        match args.last() {
            None => Ok(head),
            Some(last) => {
                let loc = Loc(head.span().to(last.span()));
                Ok(Expr {
                    kind: ExprKind::App(Box::new(head), args),
                    loc,
                })
            }
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(name) => Ok(Expr {
                kind: ExprKind::Ident(name),
                loc: Loc(t.span),
            }),
            Tok::Type => Ok(Expr {
                kind: ExprKind::Type,
                loc: Loc(t.span),
            }),
            Tok::LParen => {
                let mut e = self.expr()?;
                let end = self.expect(Tok::RParen)?;
                e.loc = Loc(t.span.to(&end));
                Ok(e)
            }
            _ => unreachable!("starts_atom was checked"),
        }
    }
}
