//! Exhaustiveness of function clauses.
//!
//! Coverage builds a case tree over the function's telescope. Each node holds
//! a context of split variables and the argument terms built so far. Clauses
//! are tried top to bottom like the evaluator does: a clause that cannot be
//! ruled out but needs to inspect a variable causes a split on that variable.
//! Splitting enumerates the constructors available at the variable's type,
//! where availability is decided by matching the type's indices against each
//! constructor's row. A node with no available constructors at some variable
//! is covered vacuously.

use crate::check::{CheckResult, Checker, TypeError};
use crate::diagnostic::{Diagnostic, ErrorCode};
use crate::eval::{EvalOptions, Evaluator};
use crate::pattern::MatchOutcome;
use crate::syntax::{FuncDecl, Name, Pattern, PatternDisplay, Signature, Telescope, Term, Var};

/// Which constructors of a data type can inhabit it at given indices.
#[derive(Clone, Debug, PartialEq)]
pub enum Availability {
    /// Constructors whose rows match, in declaration order.
    Available(Vec<Name>),
    /// Matching the indices against this constructor's row got stuck at the
    /// given position.
    Undecidable(Name, usize),
}

pub fn available_ctors(sig: &Signature, data: &str, us: &[Term]) -> CheckResult<Availability> {
    available_ctors_with(&Evaluator::new(sig, EvalOptions::default()), data, us)
}

/// As [`available_ctors`], normalizing the indices with `ev` first.
pub fn available_ctors_with(
    ev: &Evaluator<'_>,
    data: &str,
    us: &[Term],
) -> CheckResult<Availability> {
    let decl = ev.signature().data(data).ok_or_else(|| {
        TypeError::new(
            ErrorCode::UnknownName,
            format!("unknown data type `{data}`"),
        )
    })?;
    let normal = us
        .iter()
        .map(|u| ev.whnf_spine(u))
        .collect::<Result<Vec<_>, _>>()?;
    let mut available = Vec::new();
    for row in &decl.ctors {
        match &row.patterns {
            None => available.push(row.name.clone()),
            Some(ps) => match ev.match_terms(&normal, ps)? {
                MatchOutcome::Matched(_) => available.push(row.name.clone()),
                MatchOutcome::Mismatch => {}
                MatchOutcome::Stuck(i) => {
                    return Ok(Availability::Undecidable(row.name.clone(), i))
                }
            },
        }
    }
    Ok(Availability::Available(available))
}

/// Non-fatal findings of a successful coverage check.
#[derive(Clone, Debug, Default)]
pub struct CoverageReport {
    pub warnings: Vec<Diagnostic>,
}

pub fn check_coverage(sig: &Signature, func: &FuncDecl) -> CheckResult<CoverageReport> {
    check_coverage_with(&Checker::new(sig, EvalOptions::default()), func)
}

pub fn check_coverage_with(ck: &Checker<'_>, func: &FuncDecl) -> CheckResult<CoverageReport> {
    let (ctx, _) = func.telescope.freshen();
    let args = ctx.var_terms();
    let mut cover = Cover {
        ck,
        func,
        reached: vec![false; func.clauses.len()],
    };
    cover.node(Node { ctx, args })?;
    let warnings = func
        .clauses
        .iter()
        .zip(&cover.reached)
        .filter(|(c, reached)| !**reached && !c.has_impossible())
        .map(|(c, _)| {
            Diagnostic::new(
                ErrorCode::UnreachableClause,
                format!(
                    "clause `{}` of `{}` is unreachable",
                    PatternDisplay(&c.patterns),
                    func.name
                ),
                c.span.clone().or_else(|| func.span.clone()),
            )
        })
        .collect();
    Ok(CoverageReport { warnings })
}

struct Node {
    ctx: Telescope,
    args: Vec<Term>,
}

enum Step {
    Claim,
    Reject,
    Split(Var),
}

struct Cover<'a, 's> {
    ck: &'a Checker<'s>,
    func: &'a FuncDecl,
    reached: Vec<bool>,
}

impl Cover<'_, '_> {
    fn node(&mut self, node: Node) -> CheckResult<()> {
        for (i, clause) in self.func.clauses.iter().enumerate() {
            match classify_row(&node.args, &clause.patterns) {
                Step::Claim => {
                    self.reached[i] = true;
                    return Ok(());
                }
                Step::Reject => continue,
                Step::Split(x) => return self.split(node, &x),
            }
        }
        if self.has_empty_binding(&node.ctx)? {
            return Ok(());
        }
        Err(TypeError::new(
            ErrorCode::MissingCase,
            format!(
                "`{}` does not cover all cases: missing case `{}`",
                self.func.name,
                render_case(&node.args)
            ),
        ))
    }

    fn split(&mut self, node: Node, x: &Var) -> CheckResult<()> {
        let ck = self.ck;
        let pos = node
            .ctx
            .iter()
            .position(|b| &b.var == x)
            .expect("split variable is in the node context");
        let ty = node.ctx.entries()[pos].ty.clone();
        let (data, indices) = ck
            .expect_data(&ty, &format!("splitting on `{x}`"))
            .map_err(|e| TypeError::new(ErrorCode::CannotSplit, e.message))?;
        let names = match available_ctors_with(ck.evaluator(), &data.name, &indices)? {
            Availability::Available(names) => names,
            Availability::Undecidable(c, _) => {
                return Err(TypeError::new(
                    ErrorCode::CannotSplit,
                    format!(
                        "cannot split on `{x} : {ty}`: availability of constructor `{c}` is stuck"
                    ),
                ))
            }
        };
        for name in names {
            let row = data
                .ctor(&name)
                .expect("available constructor belongs to the data type");
            let (fields, _) = ck.available_fields(data, row, &indices)?.freshen();
            let con = Term::ConCall(name, fields.var_terms());
            let entries = node.ctx.entries();
            let mut ctx = Telescope::from_bindings(entries[..pos].to_vec());
            ctx = ctx.concat(&fields);
            for b in &entries[pos + 1..] {
                ctx.push(b.var.clone(), b.ty.subst_one(x, &con));
            }
            let args = node.args.iter().map(|a| a.subst_one(x, &con)).collect();
            self.node(Node { ctx, args })?;
        }
        Ok(())
    }

    /// Some variable of the node has a data type with no available constructor.
    fn has_empty_binding(&self, ctx: &Telescope) -> CheckResult<bool> {
        for b in ctx {
            let Ok((data, indices)) = self.ck.expect_data(&b.ty, "") else {
                continue;
            };
            if let Availability::Available(names) =
                available_ctors_with(self.ck.evaluator(), &data.name, &indices)?
            {
                if names.is_empty() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Compares the node's arguments with a clause row. A clash anywhere rules
/// the clause out; otherwise the leftmost variable a pattern needs to inspect
/// is split.
fn classify_row(args: &[Term], ps: &[Pattern]) -> Step {
    let mut split = None;
    for (u, p) in args.iter().zip(ps) {
        match classify(u, p) {
            Step::Reject => return Step::Reject,
            Step::Split(x) => {
                split.get_or_insert(x);
            }
            Step::Claim => {}
        }
    }
    match split {
        Some(x) => Step::Split(x),
        None => Step::Claim,
    }
}

fn classify(u: &Term, p: &Pattern) -> Step {
    match (p, u) {
        (Pattern::Bind(..), _) => Step::Claim,
        (Pattern::Impossible | Pattern::Con(..), Term::VarCall(x, args)) if args.is_empty() => {
            Step::Split(x.clone())
        }
        (Pattern::Con(c, qs), Term::ConCall(c2, vs)) if c == c2 => classify_row(vs, qs),
        _ => Step::Reject,
    }
}

/// Renders argument terms of an uncovered node, with `_` for variables.
pub fn render_case(args: &[Term]) -> String {
    fn go(t: &Term, nested: bool, out: &mut String) {
        match t {
            Term::ConCall(c, vs) if !vs.is_empty() => {
                if nested {
                    out.push('(');
                }
                out.push_str(c);
                for v in vs {
                    out.push(' ');
                    go(v, true, out);
                }
                if nested {
                    out.push(')');
                }
            }
            Term::ConCall(c, _) => out.push_str(c),
            _ => out.push('_'),
        }
    }
    let mut out = String::new();
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        go(a, false, &mut out);
    }
    out
}
