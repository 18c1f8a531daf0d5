//! Surface syntax as written, before name resolution. Equality ignores
//! source locations.

use crate::diagnostic::Span;

/// A source location that never affects equality of the tree it sits in.
#[derive(Clone, Debug)]
pub struct Loc(pub Span);

impl PartialEq for Loc {
    fn eq(&self, _: &Loc) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ident {
    pub name: String,
    pub loc: Loc,
}

impl Ident {
    pub fn span(&self) -> &Span {
        &self.loc.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Ident(String),
    Type,
    App(Box<Expr>, Vec<Expr>),
    /// `(x y : A) -> B`
    Pi(Vec<Ident>, Box<Expr>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Lam(Ident, Box<Expr>),
}

impl Expr {
    pub fn span(&self) -> &Span {
        &self.loc.0
    }
}

/// `(x y : A)`
#[derive(Clone, Debug, PartialEq)]
pub struct Binder {
    pub names: Vec<Ident>,
    pub ty: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Pat {
    /// A name applied to sub-patterns; constructor or variable is decided
    /// during resolution.
    Ident(Ident, Vec<Pat>),
    Impossible(Loc),
}

impl Pat {
    pub fn span(&self) -> &Span {
        match self {
            Pat::Ident(id, _) => id.span(),
            Pat::Impossible(loc) => &loc.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub patterns: Option<Vec<Pat>>,
    pub name: Ident,
    pub fields: Vec<Binder>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClauseSyn {
    pub patterns: Vec<Pat>,
    pub body: Option<Expr>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Data {
        name: Ident,
        params: Vec<Binder>,
        rows: Vec<Row>,
        loc: Loc,
    },
    Def {
        name: Ident,
        params: Vec<Binder>,
        result: Expr,
        clauses: Vec<ClauseSyn>,
        loc: Loc,
    },
}

impl Decl {
    pub fn name(&self) -> &Ident {
        match self {
            Decl::Data { name, .. } | Decl::Def { name, .. } => name,
        }
    }

    pub fn span(&self) -> &Span {
        match self {
            Decl::Data { loc, .. } | Decl::Def { loc, .. } => &loc.0,
        }
    }
}
