use super::{CheckResult, Checker, TypeError};
use crate::diagnostic::ErrorCode;
use crate::pattern::MatchOutcome;
use crate::syntax::{CtorRow, DataDecl, PatternDisplay, Telescope, Term};

impl Checker<'_> {
    pub fn check_type(&self, ctx: &Telescope, ty: &Term) -> CheckResult<()> {
        self.check_term(ctx, ty, &Term::Univ)
    }

    pub fn check_term(&self, ctx: &Telescope, u: &Term, ty: &Term) -> CheckResult<()> {
        match u {
            Term::Lam(x, body) => match self.whnf(ty)? {
                Term::Pi(y, dom, cod) => {
                    let mut inner = ctx.clone();
                    inner.push(x.clone(), *dom);
                    let cod = cod.subst_one(&y, &Term::var(x));
                    self.check_term(&inner, body, &cod)
                }
                other => Err(TypeError {
                    expected: Some(Box::new(other.clone())),
                    ..TypeError::new(
                        ErrorCode::ExpectedFunctionType,
                        format!("`{u}` is a function but `{other}` was expected"),
                    )
                }),
            },
            Term::ConCall(c, args) => self.check_con(ctx, c, args, ty),
            _ => {
                let actual = self.infer(ctx, u)?;
                if self.ev.convertible(&actual, ty)? {
                    Ok(())
                } else {
                    Err(TypeError::mismatch(ty, &actual, u))
                }
            }
        }
    }

    pub fn infer(&self, ctx: &Telescope, u: &Term) -> CheckResult<Term> {
        let sig = self.signature();
        match u {
            Term::Univ => Ok(Term::Univ),
            Term::VarCall(x, args) => {
                let ty = ctx.lookup(x).ok_or_else(|| {
                    TypeError::new(
                        ErrorCode::UnboundVariable,
                        format!("variable `{x}` is not in scope"),
                    )
                })?;
                self.infer_spine(ctx, ty.clone(), args)
            }
            Term::FnCall(f, args) => {
                let decl = sig.func(f).ok_or_else(|| unknown(f))?;
                self.check_args(ctx, args, &decl.telescope)?;
                Ok(decl.result.instantiate(&decl.telescope.vars(), args))
            }
            Term::DataCall(d, args) => {
                let decl = sig.data(d).ok_or_else(|| unknown(d))?;
                self.check_args(ctx, args, &decl.telescope)?;
                Ok(Term::Univ)
            }
            Term::ConCall(c, args) => {
                let (data, _) = sig.ctor(c).ok_or_else(|| unknown(c))?;
                if !data.telescope.is_empty() {
                    return Err(TypeError::new(
                        ErrorCode::CannotInfer,
                        format!(
                            "cannot infer the type of `{u}`; `{}` has arguments that must come from the expected type",
                            data.name
                        ),
                    ));
                }
                let ty = Term::DataCall(data.name.clone(), Vec::new());
                self.check_con(ctx, c, args, &ty)?;
                Ok(ty)
            }
            Term::Pi(x, dom, cod) => {
                self.check_type(ctx, dom)?;
                let mut inner = ctx.clone();
                inner.push(x.clone(), (**dom).clone());
                self.check_type(&inner, cod)?;
                Ok(Term::Univ)
            }
            Term::Lam(..) => Err(TypeError::new(
                ErrorCode::CannotInfer,
                format!("cannot infer the type of `{u}`"),
            )),
            Term::App(head, args) => {
                let ty = self.infer(ctx, head)?;
                self.infer_spine(ctx, ty, args)
            }
        }
    }

    fn infer_spine(&self, ctx: &Telescope, mut ty: Term, args: &[Term]) -> CheckResult<Term> {
        for (i, a) in args.iter().enumerate() {
            match self.whnf(&ty)? {
                Term::Pi(x, dom, cod) => {
                    self.check_term(ctx, a, &dom)
                        .map_err(|e| e.at_position(i))?;
                    ty = cod.subst_one(&x, a);
                }
                other => {
                    return Err(TypeError {
                        actual: Some(Box::new(other.clone())),
                        ..TypeError::new(
                            ErrorCode::ExpectedFunctionType,
                            format!("cannot apply to `{a}`: `{other}` is not a function type"),
                        )
                    })
                }
            }
        }
        Ok(ty)
    }

    /// `ū : Δ`: each argument checks at its entry's type with the earlier
    /// arguments substituted in.
    pub fn check_args(&self, ctx: &Telescope, us: &[Term], tele: &Telescope) -> CheckResult<()> {
        if us.len() != tele.len() {
            return Err(TypeError::new(
                ErrorCode::ArityMismatch,
                format!("expected {} arguments, found {}", tele.len(), us.len()),
            ));
        }
        let mut vars = Vec::with_capacity(us.len());
        for (i, (u, b)) in us.iter().zip(tele).enumerate() {
            let ty = b.ty.instantiate(&vars, &us[..i]);
            self.check_term(ctx, u, &ty).map_err(|e| e.at_position(i))?;
            vars.push(b.var.clone());
        }
        Ok(())
    }

    /// Telescope well-formedness; returns the context extended by it.
    pub fn check_telescope(&self, ctx: &Telescope, tele: &Telescope) -> CheckResult<Telescope> {
        let mut ctx = ctx.clone();
        for b in tele {
            self.check_type(&ctx, &b.ty)?;
            ctx.push(b.var.clone(), b.ty.clone());
        }
        Ok(ctx)
    }

    fn check_con(&self, ctx: &Telescope, c: &str, args: &[Term], ty: &Term) -> CheckResult<()> {
        let sig = self.signature();
        let (owner, row) = sig.ctor(c).ok_or_else(|| unknown(c))?;
        let (data, indices) = self.expect_data(ty, &format!("constructor `{c}`"))?;
        if data.name != owner.name {
            return Err(TypeError {
                expected: Some(Box::new(ty.clone())),
                ..TypeError::new(
                    ErrorCode::CtorNotInData,
                    format!(
                        "`{c}` is a constructor of `{}`, not of `{}`",
                        owner.name, data.name
                    ),
                )
            });
        }
        let fields = self.available_fields(data, row, &indices)?;
        if args.len() != fields.len() {
            return Err(TypeError::new(
                ErrorCode::ArityMismatch,
                format!(
                    "`{c}` takes {} arguments, found {}",
                    fields.len(),
                    args.len()
                ),
            ));
        }
        self.check_args(ctx, args, &fields)
    }

    /// Brings `ty` to a data type call, or reports that `what` needs one.
    pub(crate) fn expect_data(&self, ty: &Term, what: &str) -> CheckResult<(&DataDecl, Vec<Term>)> {
        match self.whnf(ty)? {
            Term::DataCall(d, us) => {
                let data = self.signature().data(&d).ok_or_else(|| unknown(&d))?;
                Ok((data, us))
            }
            other => Err(TypeError {
                actual: Some(Box::new(other.clone())),
                ..TypeError::new(
                    ErrorCode::ExpectedDataType,
                    format!("{what} needs a data type, but the type is `{other}`"),
                )
            }),
        }
    }

    /// The field telescope of `row` at `D ū`, provided the constructor is
    /// available there.
    pub(crate) fn available_fields(
        &self,
        data: &DataDecl,
        row: &CtorRow,
        indices: &[Term],
    ) -> CheckResult<Telescope> {
        self.fields_at(data, row, indices, false)
    }

    /// As [`Checker::available_fields`]; with `lenient`, a stuck row is
    /// assumed available and its pattern variables stay opaque.
    pub(crate) fn fields_at(
        &self,
        data: &DataDecl,
        row: &CtorRow,
        indices: &[Term],
        lenient: bool,
    ) -> CheckResult<Telescope> {
        let params = data.telescope.vars();
        let Some(ps) = &row.patterns else {
            return Ok(row.fields.instantiate(&params, indices));
        };
        let normal = indices
            .iter()
            .map(|u| self.ev.whnf_spine(u))
            .collect::<Result<Vec<_>, _>>()?;
        let shown = || Term::DataCall(data.name.clone(), indices.to_vec()).to_string();
        match self.ev.match_terms(&normal, ps)? {
            MatchOutcome::Matched(sigma) => {
                Ok(row.fields.subst(&sigma).instantiate(&params, indices))
            }
            MatchOutcome::Mismatch => Err(TypeError::new(
                ErrorCode::CtorNotAvailable,
                format!(
                    "constructor `{}` is not available at `{}`: its row `{}` does not match",
                    row.name,
                    shown(),
                    PatternDisplay(ps)
                ),
            )),
            MatchOutcome::Stuck(_) if lenient => Ok(row.fields.instantiate(&params, indices)),
            MatchOutcome::Stuck(i) => Err(TypeError::new(
                ErrorCode::CtorAvailabilityStuck,
                format!(
                    "cannot decide whether constructor `{}` is available at `{}`: matching `{}` against `{}` is stuck",
                    row.name,
                    shown(),
                    normal[i],
                    PatternDisplay(ps)
                ),
            )),
        }
    }
}

pub(crate) fn unknown(name: &str) -> TypeError {
    TypeError::new(ErrorCode::UnknownName, format!("unknown name `{name}`"))
}
