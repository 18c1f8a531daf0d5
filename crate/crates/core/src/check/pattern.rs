use std::collections::HashSet;

use super::term::unknown;
use super::{CheckResult, Checker, TypeError};
use crate::diagnostic::ErrorCode;
use crate::pattern::{to_term, MatchOutcome};
use crate::syntax::{Pattern, Telescope, Term, Var};

impl Checker<'_> {
    /// Checks one pattern against a type, filling in binding types, and
    /// returns the bindings it introduces.
    ///
    /// `lenient` is set for patterns that follow an `impossible` in the same
    /// row: their types may mention an opaque variable, so a stuck
    /// availability check is tolerated.
    pub fn check_pattern(
        &self,
        ctx: &Telescope,
        p: &mut Pattern,
        ty: &Term,
        lenient: bool,
    ) -> CheckResult<Telescope> {
        let sig = self.signature();
        match p {
            Pattern::Bind(x, slot) => {
                *slot = Some(ty.clone());
                let mut theta = Telescope::new();
                theta.push(x.clone(), ty.clone());
                Ok(theta)
            }
            Pattern::Con(c, args) => {
                let (owner, row) = sig.ctor(c).ok_or_else(|| unknown(c))?;
                let (data, indices) = self.expect_data(ty, &format!("pattern `{c}`"))?;
                if owner.name != data.name {
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
                let fields = self.fields_at(data, row, &indices, lenient)?;
                if fields.len() != args.len() {
                    return Err(TypeError::new(
                        ErrorCode::ArityMismatch,
                        format!(
                            "pattern `{c}` takes {} arguments, found {}",
                            fields.len(),
                            args.len()
                        ),
                    ));
                }
                self.check_pattern_list(ctx, args, &fields, lenient)
            }
            Pattern::Impossible => {
                let (data, indices) = self.expect_data(ty, "an impossible pattern")?;
                let normal = indices
                    .iter()
                    .map(|u| self.ev.whnf_spine(u))
                    .collect::<Result<Vec<_>, _>>()?;
                for row in &data.ctors {
                    let Some(ps) = &row.patterns else {
                        return Err(TypeError::new(
                            ErrorCode::ImpossibleButAvailable,
                            format!(
                                "`{ty}` is not empty: constructor `{}` is always available",
                                row.name
                            ),
                        ));
                    };
                    match self.ev.match_terms(&normal, ps)? {
                        MatchOutcome::Mismatch => {}
                        MatchOutcome::Matched(_) => {
                            return Err(TypeError::new(
                                ErrorCode::ImpossibleButAvailable,
                                format!(
                                    "`{ty}` is not empty: constructor `{}` is available",
                                    row.name
                                ),
                            ))
                        }
                        MatchOutcome::Stuck(_) => {
                            return Err(TypeError::new(
                                ErrorCode::ImpossibleButStuck,
                                format!(
                                    "cannot show `{ty}` is empty: availability of `{}` is stuck",
                                    row.name
                                ),
                            ))
                        }
                    }
                }
                Ok(Telescope::new())
            }
        }
    }

    /// Checks a pattern row against a telescope, substituting each pattern's
    /// term form into the rest of the telescope.
    pub fn check_patterns(
        &self,
        ctx: &Telescope,
        ps: &mut [Pattern],
        tele: &Telescope,
    ) -> CheckResult<Telescope> {
        self.check_pattern_list(ctx, ps, tele, false)
    }

    fn check_pattern_list(
        &self,
        ctx: &Telescope,
        ps: &mut [Pattern],
        tele: &Telescope,
        mut lenient: bool,
    ) -> CheckResult<Telescope> {
        if ps.len() != tele.len() {
            return Err(TypeError::new(
                ErrorCode::ArityMismatch,
                format!("expected {} patterns, found {}", tele.len(), ps.len()),
            ));
        }
        let mut theta = Telescope::new();
        let mut seen = HashSet::new();
        let mut vars: Vec<Var> = Vec::with_capacity(ps.len());
        let mut terms: Vec<Term> = Vec::with_capacity(ps.len());
        for (i, (p, b)) in ps.iter_mut().zip(tele).enumerate() {
            let ty = b.ty.instantiate(&vars, &terms);
            let bound = self
                .check_pattern(ctx, p, &ty, lenient)
                .map_err(|e| e.at_position(i))?;
            for x in bound.vars() {
                if !seen.insert(x.clone()) {
                    return Err(TypeError::new(
                        ErrorCode::DuplicateBinding,
                        format!("variable `{x}` is bound more than once in this pattern row"),
                    ));
                }
            }
            theta = theta.disjoint_union(bound)?;
            vars.push(b.var.clone());
            if p.contains_impossible() {
                lenient = true;
                terms.push(Term::var(&Var::fresh("_")));
            } else {
                terms.push(to_term(p)?);
            }
        }
        Ok(theta)
    }
}
