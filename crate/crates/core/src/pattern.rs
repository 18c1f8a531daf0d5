//! Operations on patterns: collecting bindings, turning a pattern into the
//! term it matches exactly, and matching terms against patterns.
//!
//! Matching is purely syntactic. Callers are responsible for bringing the
//! inspected positions into weak-head normal form first.

use crate::syntax::{CoreError, Pattern, Substitution, Telescope, Term, Var};

/// Result of matching a list of terms against a list of patterns.
#[derive(Clone, Debug, PartialEq)]
pub enum MatchOutcome {
    /// Positive success; the substitution binds exactly the pattern variables.
    Matched(Substitution),
    /// Negative success: some constructor clashes.
    Mismatch,
    /// A constructor pattern met a term that is not a constructor call. The
    /// index is the top-level position of the offending term.
    Stuck(usize),
}

impl MatchOutcome {
    pub fn is_matched(&self) -> bool {
        matches!(self, MatchOutcome::Matched(_))
    }
}

/// `vars Δ`.
pub fn vars_tele(tele: &Telescope) -> Vec<Var> {
    tele.vars()
}

/// The bindings of a checked pattern row, left to right, with their types.
pub fn vars_pats(ps: &[Pattern]) -> Result<Telescope, CoreError> {
    let mut out = Telescope::new();
    for p in ps {
        collect_typed(p, &mut out)?;
    }
    Ok(out)
}

fn collect_typed(p: &Pattern, out: &mut Telescope) -> Result<(), CoreError> {
    match p {
        Pattern::Bind(x, Some(ty)) => out.push(x.clone(), ty.clone()),
        Pattern::Bind(x, None) => return Err(CoreError::UntypedBinding(x.name().to_string())),
        Pattern::Con(_, ps) => {
            for q in ps {
                collect_typed(q, out)?;
            }
        }
        Pattern::Impossible => {}
    }
    Ok(())
}

/// The term that matches exactly the pattern.
pub fn to_term(p: &Pattern) -> Result<Term, CoreError> {
    match p {
        Pattern::Bind(x, _) => Ok(Term::var(x)),
        Pattern::Con(c, ps) => Ok(Term::ConCall(c.clone(), to_terms(ps)?)),
        Pattern::Impossible => Err(CoreError::ImpossibleHasNoTerm),
    }
}

pub fn to_terms(ps: &[Pattern]) -> Result<Vec<Term>, CoreError> {
    ps.iter().map(to_term).collect()
}

enum Local {
    Matched(Substitution),
    Mismatch,
    Stuck,
}

/// Matches `us` against `ps` position by position.
///
/// A mismatch anywhere makes the whole match a mismatch, even when another
/// position is stuck.
pub fn match_terms(us: &[Term], ps: &[Pattern]) -> Result<MatchOutcome, CoreError> {
    if us.len() != ps.len() {
        return Err(CoreError::LengthMismatch {
            terms: us.len(),
            patterns: ps.len(),
        });
    }
    let mut sigma = Substitution::new();
    let mut stuck = None;
    for (i, (u, p)) in us.iter().zip(ps).enumerate() {
        match match_one(u, p)? {
            Local::Matched(s) => sigma = sigma.disjoint_union(s)?,
            Local::Mismatch => return Ok(MatchOutcome::Mismatch),
            Local::Stuck => {
                stuck.get_or_insert(i);
            }
        }
    }
    Ok(match stuck {
        Some(i) => MatchOutcome::Stuck(i),
        None => MatchOutcome::Matched(sigma),
    })
}

fn match_one(u: &Term, p: &Pattern) -> Result<Local, CoreError> {
    match (p, u) {
        (Pattern::Bind(x, _), _) => Ok(Local::Matched(Substitution::singleton(
            x.clone(),
            u.clone(),
        ))),
        // nothing inhabits a type at which `impossible` was accepted
        (Pattern::Impossible, _) => Ok(Local::Mismatch),
        (Pattern::Con(c, qs), Term::ConCall(c2, vs)) if c == c2 => {
            if vs.len() != qs.len() {
                return Err(CoreError::LengthMismatch {
                    terms: vs.len(),
                    patterns: qs.len(),
                });
            }
            let mut sigma = Substitution::new();
            let mut stuck = false;
            for (v, q) in vs.iter().zip(qs) {
                match match_one(v, q)? {
                    Local::Matched(s) => sigma = sigma.disjoint_union(s)?,
                    Local::Mismatch => return Ok(Local::Mismatch),
                    Local::Stuck => stuck = true,
                }
            }
            Ok(if stuck {
                Local::Stuck
            } else {
                Local::Matched(sigma)
            })
        }
        (Pattern::Con(..), Term::ConCall(..)) => Ok(Local::Mismatch),
        (Pattern::Con(..), _) => Ok(Local::Stuck),
    }
}
