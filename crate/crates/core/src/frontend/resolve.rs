//! Name resolution from surface syntax to core declarations.
//!
//! Every binder gets a fresh variable. In patterns, a name that is a declared
//! constructor is a constructor pattern and any other name binds. In
//! expressions, names are looked up among local binders first, then
//! functions, data types and constructors. Heads applied to fewer arguments
//! than their arity are wrapped in lambdas up to the full spine.

use std::collections::HashMap;

use super::ast::{Binder, ClauseSyn, Decl, Expr, ExprKind, Ident, Pat, Row};
use super::ParseError;
use crate::diagnostic::{ErrorCode, Span};
use crate::syntax::{
    Clause, CtorRow, DataDecl, Declaration, FuncDecl, Name, Pattern, Telescope, Term, Var,
};

#[derive(Clone, Debug)]
enum Global {
    Func {
        params: Vec<String>,
    },
    Data {
        params: Vec<String>,
    },
    /// `lead` names the bindings that precede the fields in the
    /// constructor's synthesized type.
    Ctor {
        lead: Vec<String>,
        fields: Vec<String>,
    },
}

/// The global names of a file, used to resolve its declarations and any
/// expression evaluated against it.
#[derive(Clone, Debug, Default)]
pub struct Globals {
    table: HashMap<String, Global>,
}

type RResult<T> = Result<T, ParseError>;

fn binder_names(bs: &[Binder]) -> Vec<String> {
    bs.iter()
        .flat_map(|b| b.names.iter().map(|n| n.name.clone()))
        .collect()
}

impl Globals {
    pub fn collect(decls: &[Decl]) -> RResult<Globals> {
        let mut table = HashMap::new();
        let mut declare = |id: &Ident, g: Global| -> RResult<()> {
            if table.insert(id.name.clone(), g).is_some() {
                return Err(ParseError::new(
                    ErrorCode::DuplicateDeclaration,
                    format!("`{}` is declared more than once", id.name),
                    id.span().clone(),
                ));
            }
            Ok(())
        };
        let mut pending_rows = Vec::new();
        for d in decls {
            match d {
                Decl::Data {
                    name, params, rows, ..
                } => {
                    declare(
                        name,
                        Global::Data {
                            params: binder_names(params),
                        },
                    )?;
                    for r in rows {
                        pending_rows.push((r, binder_names(params)));
                    }
                }
                Decl::Def { name, params, .. } => declare(
                    name,
                    Global::Func {
                        params: binder_names(params),
                    },
                )?,
            }
        }
        // Constructor names must be known before row patterns can be read.
        let mut ctors = HashMap::new();
        for (r, _) in &pending_rows {
            if ctors.insert(r.name.name.clone(), ()).is_some() || table.contains_key(&r.name.name) {
                return Err(ParseError::new(
                    ErrorCode::DuplicateDeclaration,
                    format!("`{}` is declared more than once", r.name.name),
                    r.name.span().clone(),
                ));
            }
        }
        let mut g = Globals { table };
        for (r, data_params) in pending_rows {
            let lead = match &r.patterns {
                None => data_params,
                Some(ps) => {
                    let mut names = Vec::new();
                    for p in ps {
                        pattern_binders(p, &ctors, &mut names);
                    }
                    names
                }
            };
            g.table.insert(
                r.name.name.clone(),
                Global::Ctor {
                    lead,
                    fields: binder_names(&r.fields),
                },
            );
        }
        Ok(g)
    }

    fn is_ctor(&self, name: &str) -> bool {
        matches!(self.table.get(name), Some(Global::Ctor { .. }))
    }
}

fn pattern_binders(p: &Pat, ctors: &HashMap<String, ()>, out: &mut Vec<String>) {
    if let Pat::Ident(id, args) = p {
        if ctors.contains_key(&id.name) {
            for a in args {
                pattern_binders(a, ctors, out);
            }
        } else {
            out.push(id.name.clone());
        }
    }
}

/// Resolves a whole file.
pub fn resolve(decls: &[Decl]) -> RResult<(Vec<Declaration>, Globals)> {
    let globals = Globals::collect(decls)?;
    let r = Resolver { globals: &globals };
    let out = decls
        .iter()
        .map(|d| r.decl(d))
        .collect::<RResult<Vec<_>>>()?;
    Ok((out, globals))
}

/// Resolves a closed expression against a file's globals.
pub fn resolve_expr(globals: &Globals, e: &Expr) -> RResult<Term> {
    Resolver { globals }.expr(&mut Vec::new(), e)
}

type Scope = Vec<(String, Var)>;

struct Resolver<'g> {
    globals: &'g Globals,
}

impl Resolver<'_> {
    fn decl(&self, d: &Decl) -> RResult<Declaration> {
        match d {
            Decl::Data {
                name,
                params,
                rows,
                loc,
            } => {
                let mut scope = Scope::new();
                let telescope = self.telescope(&mut scope, params)?;
                let ctors = rows
                    .iter()
                    .map(|r| self.row(&scope, r))
                    .collect::<RResult<Vec<_>>>()?;
                Ok(Declaration::Data(DataDecl {
                    name: Name::from(name.name.as_str()),
                    telescope,
                    ctors,
                    span: Some(loc.0.clone()),
                }))
            }
            Decl::Def {
                name,
                params,
                result,
                clauses,
                loc,
            } => {
                let mut scope = Scope::new();
                let telescope = self.telescope(&mut scope, params)?;
                let result = self.expr(&mut scope, result)?;
                let clauses = clauses
                    .iter()
                    .map(|c| self.clause(c))
                    .collect::<RResult<Vec<_>>>()?;
                Ok(Declaration::Func(FuncDecl {
                    name: Name::from(name.name.as_str()),
                    telescope,
                    result,
                    clauses,
                    span: Some(loc.0.clone()),
                }))
            }
        }
    }

    fn row(&self, data_scope: &Scope, r: &Row) -> RResult<CtorRow> {
        let (patterns, mut scope) = match &r.patterns {
            None => (None, data_scope.clone()),
            Some(ps) => {
                let mut theta = Scope::new();
                let ps = self.patterns(&mut theta, ps)?;
                (Some(ps), theta)
            }
        };
        let fields = self.telescope(&mut scope, &r.fields)?;
        Ok(CtorRow {
            patterns,
            name: Name::from(r.name.name.as_str()),
            fields,
            span: Some(r.loc.0.clone()),
        })
    }

    fn clause(&self, c: &ClauseSyn) -> RResult<Clause> {
        let mut theta = Scope::new();
        let patterns = self.patterns(&mut theta, &c.patterns)?;
        let body = match &c.body {
            Some(b) => Some(self.expr(&mut theta, b)?),
            None => None,
        };
        Ok(Clause {
            patterns,
            body,
            span: Some(c.loc.0.clone()),
        })
    }

    fn patterns(&self, theta: &mut Scope, ps: &[Pat]) -> RResult<Vec<Pattern>> {
        ps.iter().map(|p| self.pattern(theta, p)).collect()
    }

    fn pattern(&self, theta: &mut Scope, p: &Pat) -> RResult<Pattern> {
        match p {
            Pat::Impossible(_) => Ok(Pattern::Impossible),
            Pat::Ident(id, args) if self.globals.is_ctor(&id.name) => {
                let args = self.patterns(theta, args)?;
                Ok(Pattern::Con(Name::from(id.name.as_str()), args))
            }
            Pat::Ident(id, args) if !args.is_empty() => Err(ParseError::new(
                ErrorCode::NotAConstructor,
                format!(
                    "`{}` is not a constructor and cannot take pattern arguments",
                    id.name
                ),
                id.span().clone(),
            )),
            Pat::Ident(id, _) if id.name == "_" => Ok(Pattern::Bind(Var::fresh("_"), None)),
            Pat::Ident(id, _) => {
                // A repeated name reuses its variable so that the checker
                // can report the duplicate.
                if let Some((_, x)) = theta.iter().find(|(n, _)| n == &id.name) {
                    return Ok(Pattern::Bind(x.clone(), None));
                }
                let x = Var::fresh(&id.name);
                theta.push((id.name.clone(), x.clone()));
                Ok(Pattern::Bind(x, None))
            }
        }
    }

    fn telescope(&self, scope: &mut Scope, bs: &[Binder]) -> RResult<Telescope> {
        let mut tele = Telescope::new();
        for b in bs {
            for n in &b.names {
                // Re-resolving the type per name keeps its binders distinct.
                let ty = self.expr(scope, &b.ty)?;
                let x = self.bind(scope, n)?;
                tele.push(x, ty);
            }
        }
        Ok(tele)
    }

    fn bind(&self, scope: &mut Scope, n: &Ident) -> RResult<Var> {
        if self.globals.is_ctor(&n.name) {
            return Err(ParseError::new(
                ErrorCode::ShadowsConstructor,
                format!("binder `{}` shadows a constructor", n.name),
                n.span().clone(),
            ));
        }
        let x = Var::fresh(&n.name);
        if n.name != "_" {
            scope.push((n.name.clone(), x.clone()));
        }
        Ok(x)
    }

    fn expr(&self, scope: &mut Scope, e: &Expr) -> RResult<Term> {
        match &e.kind {
            ExprKind::Type => Ok(Term::Univ),
            ExprKind::Ident(x) => self.head(scope, x, e.span(), Vec::new()),
            ExprKind::App(head, args) => {
                let args = args
                    .iter()
                    .map(|a| self.expr(scope, a))
                    .collect::<RResult<Vec<_>>>()?;
                match &head.kind {
                    ExprKind::Ident(x) => self.head(scope, x, head.span(), args),
                    _ => Ok(self.expr(scope, head)?.apply(args)),
                }
            }
            ExprKind::Pi(names, dom, cod) => {
                let depth = scope.len();
                let mut doms = Vec::new();
                for n in names {
                    let d = self.expr(scope, dom)?;
                    doms.push((self.bind(scope, n)?, d));
                }
                let mut out = self.expr(scope, cod)?;
                for (x, d) in doms.into_iter().rev() {
                    out = Term::pi(x, d, out);
                }
                scope.truncate(depth);
                Ok(out)
            }
            ExprKind::Arrow(dom, cod) => {
                let d = self.expr(scope, dom)?;
                let c = self.expr(scope, cod)?;
                Ok(Term::arrow(d, c))
            }
            ExprKind::Lam(x, body) => {
                let depth = scope.len();
                let v = self.bind(scope, x)?;
                let b = self.expr(scope, body)?;
                scope.truncate(depth);
                Ok(Term::lam(v, b))
            }
        }
    }

    fn head(&self, scope: &Scope, x: &str, span: &Span, args: Vec<Term>) -> RResult<Term> {
        if let Some((_, v)) = scope.iter().rev().find(|(n, _)| n == x) {
            return Ok(Term::var(v).apply(args));
        }
        let over = |arity: usize| {
            ParseError::new(
                ErrorCode::OverApplied,
                format!("`{x}` takes {arity} arguments but is given {}", args.len()),
                span.clone(),
            )
        };
        match self.globals.table.get(x) {
            Some(Global::Func { params }) => {
                let n = params.len();
                if args.len() >= n {
                    let mut args = args;
                    let rest = args.split_off(n);
                    Ok(Term::func(x, args).apply(rest))
                } else {
                    Ok(eta(&params[args.len()..], args, |a| Term::func(x, a)))
                }
            }
            Some(Global::Data { params }) => {
                if args.len() > params.len() {
                    return Err(over(params.len()));
                }
                Ok(eta(&params[args.len()..], args, |a| Term::data(x, a)))
            }
            Some(Global::Ctor { lead, fields }) => {
                if args.len() > fields.len() {
                    return Err(over(fields.len()));
                }
                if args.is_empty() && !fields.is_empty() {
                    // A bare reference takes the whole synthesized telescope;
                    // the leading arguments are not used by the constructor.
                    let leading: Vec<Var> = lead.iter().map(|n| Var::fresh(n)).collect();
                    let body = eta(fields, Vec::new(), |a| Term::con(x, a));
                    return Ok(leading
                        .into_iter()
                        .rev()
                        .fold(body, |acc, v| Term::lam(v, acc)));
                }
                Ok(eta(&fields[args.len()..], args, |a| Term::con(x, a)))
            }
            None => Err(ParseError::new(
                ErrorCode::UnknownIdentifier,
                format!("unknown identifier `{x}`"),
                span.clone(),
            )),
        }
    }
}

/// `fn y1 => ... fn yk => build(args ++ [y1..yk])` for the missing names.
fn eta(missing: &[String], mut args: Vec<Term>, build: impl FnOnce(Vec<Term>) -> Term) -> Term {
    let vars: Vec<Var> = missing.iter().map(|n| Var::fresh(n)).collect();
    args.extend(vars.iter().map(Term::var));
    vars.into_iter()
        .rev()
        .fold(build(args), |acc, v| Term::lam(v, acc))
}
