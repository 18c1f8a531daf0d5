//! Type checking: terms, patterns, clauses, constructor rows and whole
//! signatures.
//!
//! The checker is bidirectional. Lambdas and constructor calls are checked
//! against an expected type (constructor calls need the type's indices to
//! decide which rows are available); everything else is inferred and compared
//! by conversion. The universe is typed by itself.

mod decl;
mod pattern;
mod term;

use std::fmt;

pub use decl::{check_signature, CheckOptions, CheckedProgram};

use crate::diagnostic::{Diagnostic, ErrorCode, Span};
use crate::eval::{EvalError, EvalOptions, Evaluator};
use crate::syntax::{Clause, CoreError, CtorRow, Pattern, Signature, Telescope, Term};

/// A rejected program. Every rejection produces exactly one of these.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeError {
    pub code: ErrorCode,
    pub message: String,
    pub span: Option<Span>,
    pub expected: Option<Box<Term>>,
    pub actual: Option<Box<Term>>,
    /// Argument position for errors raised while checking an argument list.
    pub position: Option<usize>,
}

impl TypeError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> TypeError {
        TypeError {
            code,
            message: message.into(),
            span: None,
            expected: None,
            actual: None,
            position: None,
        }
    }

    pub fn mismatch(expected: &Term, actual: &Term, what: &Term) -> TypeError {
        TypeError {
            expected: Some(Box::new(expected.clone())),
            actual: Some(Box::new(actual.clone())),
            ..TypeError::new(
                ErrorCode::TypeMismatch,
                format!("`{what}` has type `{actual}` but `{expected}` was expected"),
            )
        }
    }

    pub(crate) fn or_span(mut self, span: Option<&Span>) -> TypeError {
        if self.span.is_none() {
            self.span = span.cloned();
        }
        self
    }

    pub(crate) fn at_position(mut self, i: usize) -> TypeError {
        if self.position.is_none() {
            self.position = Some(i);
        }
        self
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::new(self.code, self.message.clone(), self.span.clone())
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl std::error::Error for TypeError {}

impl From<EvalError> for TypeError {
    fn from(e: EvalError) -> TypeError {
        match e {
            EvalError::FuelExhausted(_) => TypeError::new(ErrorCode::FuelExhausted, e.to_string()),
            EvalError::Core(core) => core.into(),
        }
    }
}

impl From<CoreError> for TypeError {
    fn from(e: CoreError) -> TypeError {
        TypeError::new(ErrorCode::Internal, format!("internal error: {e}"))
    }
}

pub type CheckResult<T> = Result<T, TypeError>;

/// Checks terms and patterns against a fixed signature.
pub struct Checker<'s> {
    ev: Evaluator<'s>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature, opts: EvalOptions) -> Checker<'s> {
        Checker {
            ev: Evaluator::new(sig, opts),
        }
    }

    pub fn from_evaluator(ev: Evaluator<'s>) -> Checker<'s> {
        Checker { ev }
    }

    pub fn evaluator(&self) -> &Evaluator<'s> {
        &self.ev
    }

    pub fn signature(&self) -> &'s Signature {
        self.ev.signature()
    }

    fn whnf(&self, t: &Term) -> CheckResult<Term> {
        Ok(self.ev.whnf(t)?)
    }
}

// Entry points with default evaluation options.

pub fn check_term(sig: &Signature, ctx: &Telescope, u: &Term, ty: &Term) -> CheckResult<()> {
    Checker::new(sig, EvalOptions::default()).check_term(ctx, u, ty)
}

pub fn infer(sig: &Signature, ctx: &Telescope, u: &Term) -> CheckResult<Term> {
    Checker::new(sig, EvalOptions::default()).infer(ctx, u)
}

pub fn check_args(
    sig: &Signature,
    ctx: &Telescope,
    us: &[Term],
    tele: &Telescope,
) -> CheckResult<()> {
    Checker::new(sig, EvalOptions::default()).check_args(ctx, us, tele)
}

pub fn check_pattern(
    sig: &Signature,
    ctx: &Telescope,
    p: &mut Pattern,
    ty: &Term,
) -> CheckResult<Telescope> {
    Checker::new(sig, EvalOptions::default()).check_pattern(ctx, p, ty, false)
}

pub fn check_patterns(
    sig: &Signature,
    ctx: &Telescope,
    ps: &mut [Pattern],
    tele: &Telescope,
) -> CheckResult<Telescope> {
    Checker::new(sig, EvalOptions::default()).check_patterns(ctx, ps, tele)
}

pub fn check_clause(
    sig: &Signature,
    ctx: &Telescope,
    tele: &Telescope,
    result: &Term,
    clause: &mut Clause,
) -> CheckResult<()> {
    Checker::new(sig, EvalOptions::default()).check_clause(ctx, tele, result, clause)
}

pub fn check_ctor_row(
    sig: &Signature,
    ctx: &Telescope,
    tele: &Telescope,
    row: &mut CtorRow,
) -> CheckResult<()> {
    Checker::new(sig, EvalOptions::default())
        .check_ctor_row(ctx, tele, row, false)
        .map(|_| ())
}
