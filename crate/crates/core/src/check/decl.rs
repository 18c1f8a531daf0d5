use super::{CheckResult, Checker, TypeError};
use crate::coverage;
use crate::diagnostic::{Diagnostic, ErrorCode};
use crate::eval::{EvalOptions, Evaluator};
use crate::pattern::{to_terms, vars_pats};
use crate::syntax::{
    Clause, CtorRow, DataDecl, Declaration, FuncDecl, Pattern, Signature, Telescope, Term,
};

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub coverage: bool,
    /// Additionally check pattern-row fields under the data telescope and
    /// warn where that disagrees with checking them under the row's bindings.
    pub strict_fig6: bool,
    pub eval: EvalOptions,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            coverage: true,
            strict_fig6: false,
            eval: EvalOptions::default(),
        }
    }
}

/// A well-formed signature plus any warnings raised while checking it.
#[derive(Clone, Debug)]
pub struct CheckedProgram {
    pub signature: Signature,
    pub warnings: Vec<Diagnostic>,
}

impl Checker<'_> {
    pub fn check_clause(
        &self,
        ctx: &Telescope,
        tele: &Telescope,
        result: &Term,
        clause: &mut Clause,
    ) -> CheckResult<()> {
        let theta = self.check_patterns(ctx, &mut clause.patterns, tele)?;
        match (&clause.body, clause.has_impossible()) {
            (Some(_), true) => Err(TypeError::new(
                ErrorCode::BodyWithImpossible,
                "a clause with an impossible pattern must not have a body",
            )),
            (None, false) => Err(TypeError::new(
                ErrorCode::MissingBody,
                "a clause without an impossible pattern needs a body",
            )),
            (None, true) => Ok(()),
            (Some(body), false) => {
                let target = result.instantiate(&tele.vars(), &to_terms(&clause.patterns)?);
                self.check_term(&ctx.concat(&theta), body, &target)
            }
        }
    }

    /// Checks a constructor row. With `strict_fig6`, a pattern row's fields
    /// are also checked under the data telescope; a disagreement is returned
    /// as a warning rather than an error.
    pub fn check_ctor_row(
        &self,
        ctx: &Telescope,
        tele: &Telescope,
        row: &mut CtorRow,
        strict_fig6: bool,
    ) -> CheckResult<Option<Diagnostic>> {
        let Some(ps) = &mut row.patterns else {
            self.check_telescope(&ctx.concat(tele), &row.fields)?;
            return Ok(None);
        };
        if ps.iter().any(Pattern::contains_impossible) {
            return Err(TypeError::new(
                ErrorCode::ImpossibleInCtorRow,
                format!(
                    "constructor `{}` cannot be guarded by an impossible pattern",
                    row.name
                ),
            ));
        }
        let theta = self.check_patterns(ctx, ps, tele)?;
        self.check_telescope(&ctx.concat(&theta), &row.fields)?;
        if strict_fig6 {
            if let Err(e) = self.check_telescope(&ctx.concat(tele), &row.fields) {
                return Ok(Some(Diagnostic::new(
                    ErrorCode::FieldScopeDifference,
                    format!(
                        "fields of `{}` check under the row's pattern bindings but not under the data telescope: {}",
                        row.name, e.message
                    ),
                    row.span.clone(),
                )));
            }
        }
        Ok(None)
    }

    /// The term forms of a checked, impossible-free row instantiate the
    /// telescope it was checked against.
    pub fn verify_typed_pats(
        &self,
        ctx: &Telescope,
        ps: &[Pattern],
        tele: &Telescope,
    ) -> CheckResult<()> {
        let theta = vars_pats(ps)?;
        self.check_args(&ctx.concat(&theta), &to_terms(ps)?, tele)
    }
}

/// Checks declarations one after another, each against the signature formed
/// by its predecessors, and runs coverage on every function.
pub fn check_signature(
    decls: Vec<Declaration>,
    opts: &CheckOptions,
) -> Result<CheckedProgram, TypeError> {
    let mut sig = Signature::new();
    let mut warnings = Vec::new();
    let mut fuel = opts.eval.fuel;
    for decl in decls {
        let span = decl.span().cloned();
        if sig.kind_of(decl.name()).is_some() {
            return Err(TypeError::new(
                ErrorCode::DuplicateName,
                format!("`{}` is already declared", decl.name()),
            )
            .or_span(span.as_ref()));
        }
        let step = match decl {
            Declaration::Data(d) => check_data(&mut sig, d, opts, &mut fuel, &mut warnings),
            Declaration::Func(f) => check_func(&mut sig, f, opts, &mut fuel, &mut warnings),
        };
        step.map_err(|e| e.or_span(span.as_ref()))?;
    }
    Ok(CheckedProgram {
        signature: sig,
        warnings,
    })
}

/// Runs `f` with a checker whose fuel budget continues from `fuel`.
fn with_checker<T>(
    sig: &Signature,
    opts: &CheckOptions,
    fuel: &mut u64,
    f: impl FnOnce(&Checker<'_>) -> CheckResult<T>,
) -> CheckResult<T> {
    let ev = Evaluator::with_fuel_left(sig, opts.eval.clone(), *fuel);
    let ck = Checker::from_evaluator(ev);
    let out = f(&ck);
    *fuel = ck.evaluator().fuel_left();
    out
}

fn check_data(
    sig: &mut Signature,
    data: DataDecl,
    opts: &CheckOptions,
    fuel: &mut u64,
    warnings: &mut Vec<Diagnostic>,
) -> CheckResult<()> {
    let empty = Telescope::new();
    with_checker(sig, opts, fuel, |ck| {
        ck.check_telescope(&empty, &data.telescope)
    })?;
    let name = data.name.clone();
    let tele = data.telescope.clone();
    sig.push(Declaration::Data(DataDecl {
        ctors: Vec::new(),
        ..data.clone()
    }))?;
    for mut row in data.ctors {
        let row_span = row.span.clone();
        if sig.kind_of(&row.name).is_some() {
            return Err(TypeError::new(
                ErrorCode::DuplicateName,
                format!("`{}` is already declared", row.name),
            )
            .or_span(row_span.as_ref()));
        }
        let warning = with_checker(sig, opts, fuel, |ck| {
            ck.check_ctor_row(&empty, &tele, &mut row, opts.strict_fig6)
        })
        .map_err(|e| e.or_span(row_span.as_ref()))?;
        warnings.extend(warning);
        sig.push_ctor(&name, row)?;
    }
    Ok(())
}

fn check_func(
    sig: &mut Signature,
    func: FuncDecl,
    opts: &CheckOptions,
    fuel: &mut u64,
    warnings: &mut Vec<Diagnostic>,
) -> CheckResult<()> {
    let empty = Telescope::new();
    with_checker(sig, opts, fuel, |ck| {
        let ctx = ck.check_telescope(&empty, &func.telescope)?;
        ck.check_type(&ctx, &func.result)
    })?;
    let name = func.name.clone();
    // The function is visible to its own clauses, but does not unfold while
    // they are being checked.
    sig.push(Declaration::Func(FuncDecl {
        clauses: Vec::new(),
        ..func.clone()
    }))?;
    let mut clauses = func.clauses;
    with_checker(sig, opts, fuel, |ck| {
        for clause in clauses.iter_mut() {
            ck.check_clause(&empty, &func.telescope, &func.result, clause)
                .map_err(|e| e.or_span(clause.span.as_ref()))?;
        }
        Ok(())
    })?;
    sig.set_clauses(&name, clauses);
    if opts.coverage {
        let report = with_checker(sig, opts, fuel, |ck| {
            let decl = ck
                .signature()
                .func(&name)
                .expect("function was just declared");
            coverage::check_coverage_with(ck, decl)
        })?;
        warnings.extend(report.warnings);
    }
    Ok(())
}
