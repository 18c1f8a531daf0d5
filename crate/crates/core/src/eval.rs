//! Weak-head and full normalization, clause dispatch and conversion.
//!
//! Function calls unfold by trying clauses top to bottom: the first clause
//! that matches wins, and a clause that gets stuck before any match freezes
//! the call as a neutral term. There is no termination checker, so every
//! reduction step draws from a fuel budget.

use std::cell::Cell;

use thiserror::Error;

use crate::pattern::{match_terms, MatchOutcome};
use crate::syntax::{CoreError, FuncDecl, Pattern, PatternDisplay, Signature, Substitution, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct EvalOptions {
    /// Maximum number of unfolding and beta steps.
    pub fuel: u64,
    /// Log every match to standard error.
    pub trace_match: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            fuel: DEFAULT_FUEL,
            trace_match: false,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("reduction step limit of {0} exhausted")]
    FuelExhausted(u64),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// How a function call selects a clause.
#[derive(Clone, Debug, PartialEq)]
pub enum Dispatch {
    Clause {
        index: usize,
        subst: Substitution,
    },
    /// Clause `clause` could neither match nor be ruled out.
    Stuck {
        clause: usize,
        position: usize,
    },
    FellThrough,
}

pub struct Evaluator<'s> {
    sig: &'s Signature,
    opts: EvalOptions,
    remaining: Cell<u64>,
}

impl<'s> Evaluator<'s> {
    pub fn new(sig: &'s Signature, opts: EvalOptions) -> Evaluator<'s> {
        let remaining = Cell::new(opts.fuel);
        Evaluator {
            sig,
            opts,
            remaining,
        }
    }

    /// An evaluator that continues an earlier budget; `opts.fuel` is still
    /// reported as the limit.
    pub fn with_fuel_left(sig: &'s Signature, opts: EvalOptions, left: u64) -> Evaluator<'s> {
        Evaluator {
            sig,
            opts,
            remaining: Cell::new(left),
        }
    }

    pub fn fuel_left(&self) -> u64 {
        self.remaining.get()
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    pub fn options(&self) -> &EvalOptions {
        &self.opts
    }

    fn tick(&self) -> Result<(), EvalError> {
        match self.remaining.get() {
            0 => Err(EvalError::FuelExhausted(self.opts.fuel)),
            n => {
                self.remaining.set(n - 1);
                Ok(())
            }
        }
    }

    /// Matching with optional tracing; every match in the checker and the
    /// evaluator goes through here.
    pub fn match_terms(&self, us: &[Term], ps: &[Pattern]) -> Result<MatchOutcome, CoreError> {
        let outcome = match_terms(us, ps);
        if self.opts.trace_match {
            let terms: Vec<String> = us.iter().map(Term::to_string).collect();
            let shown = match &outcome {
                Ok(MatchOutcome::Matched(s)) => {
                    let binds: Vec<String> = s
                        .entries()
                        .iter()
                        .map(|(x, v)| format!("{x} := {v}"))
                        .collect();
                    format!("matched {{{}}}", binds.join(", "))
                }
                Ok(MatchOutcome::Mismatch) => "mismatch".to_string(),
                Ok(MatchOutcome::Stuck(i)) => format!("stuck at {i}"),
                Err(e) => format!("error: {e}"),
            };
            eprintln!(
                "match [{}] against [{}]: {}",
                terms.join(", "),
                PatternDisplay(ps),
                shown
            );
        }
        outcome
    }

    pub fn whnf(&self, t: &Term) -> Result<Term, EvalError> {
        let mut current = t.clone();
        loop {
            match current {
                Term::FnCall(ref f, ref args) => {
                    let Some(decl) = self.sig.func(f) else {
                        return Ok(current);
                    };
                    match self.dispatch(decl, args)? {
                        Dispatch::Clause { index, subst } => {
                            self.tick()?;
                            // clauses that match always have a body
                            let body = decl.clauses[index]
                                .body
                                .as_ref()
                                .expect("matched clause without body");
                            current = body.subst(&subst);
                        }
                        _ => return Ok(current),
                    }
                }
                Term::App(head, args) => {
                    let head = self.whnf(&head)?;
                    match head {
                        Term::Lam(x, body) => {
                            self.tick()?;
                            let mut args = args.into_iter();
                            let first = args.next().expect("application without arguments");
                            current = body.subst_one(&x, &first).apply(args.collect());
                        }
                        head => return Ok(head.apply(args)),
                    }
                }
                other => return Ok(other),
            }
        }
    }

    /// Weak-head normal form, continuing into the arguments of constructor
    /// calls. This is the form matching expects.
    pub fn whnf_spine(&self, t: &Term) -> Result<Term, EvalError> {
        self.whnf_to_depth(t, usize::MAX)
    }

    fn whnf_to_depth(&self, t: &Term, depth: usize) -> Result<Term, EvalError> {
        if depth == 0 {
            return Ok(t.clone());
        }
        match self.whnf(t)? {
            Term::ConCall(c, args) => {
                let args = args
                    .iter()
                    .map(|a| self.whnf_to_depth(a, depth - 1))
                    .collect::<Result<_, _>>()?;
                Ok(Term::ConCall(c, args))
            }
            other => Ok(other),
        }
    }

    /// Selects the clause a call reduces by.
    pub fn dispatch(&self, decl: &FuncDecl, args: &[Term]) -> Result<Dispatch, EvalError> {
        if decl.clauses.is_empty() {
            return Ok(Dispatch::FellThrough);
        }
        let forced = (0..args.len())
            .map(|i| {
                let depth = decl
                    .clauses
                    .iter()
                    .filter_map(|c| c.patterns.get(i))
                    .map(Pattern::depth)
                    .max()
                    .unwrap_or(0);
                self.whnf_to_depth(&args[i], depth)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (index, clause) in decl.clauses.iter().enumerate() {
            match self.match_terms(&forced, &clause.patterns)? {
                MatchOutcome::Matched(subst) => return Ok(Dispatch::Clause { index, subst }),
                MatchOutcome::Mismatch => continue,
                MatchOutcome::Stuck(position) => {
                    return Ok(Dispatch::Stuck {
                        clause: index,
                        position,
                    })
                }
            }
        }
        Ok(Dispatch::FellThrough)
    }

    pub fn normalize(&self, t: &Term) -> Result<Term, EvalError> {
        let norm_all = |args: &[Term]| -> Result<Vec<Term>, EvalError> {
            args.iter().map(|a| self.normalize(a)).collect()
        };
        Ok(match self.whnf(t)? {
            Term::FnCall(f, args) => Term::FnCall(f, norm_all(&args)?),
            Term::VarCall(x, args) => Term::VarCall(x, norm_all(&args)?),
            Term::DataCall(d, args) => Term::DataCall(d, norm_all(&args)?),
            Term::ConCall(c, args) => Term::ConCall(c, norm_all(&args)?),
            Term::App(head, args) => self.normalize(&head)?.apply(norm_all(&args)?),
            Term::Pi(x, dom, cod) => Term::pi(x, self.normalize(&dom)?, self.normalize(&cod)?),
            Term::Lam(x, body) => Term::lam(x, self.normalize(&body)?),
            Term::Univ => Term::Univ,
        })
    }

    /// Definitional equality: normal forms agree up to alpha and lambda eta.
    pub fn convertible(&self, u: &Term, v: &Term) -> Result<bool, EvalError> {
        if u.alpha_eq(v) {
            return Ok(true);
        }
        let u = self.normalize(u)?;
        let v = self.normalize(v)?;
        Ok(u.alpha_eta_eq(&v))
    }
}

pub fn whnf(sig: &Signature, u: &Term) -> Result<Term, EvalError> {
    Evaluator::new(sig, EvalOptions::default()).whnf(u)
}

pub fn normalize(sig: &Signature, u: &Term) -> Result<Term, EvalError> {
    Evaluator::new(sig, EvalOptions::default()).normalize(u)
}

pub fn convertible(sig: &Signature, u: &Term, v: &Term) -> Result<bool, EvalError> {
    Evaluator::new(sig, EvalOptions::default()).convertible(u, v)
}
