//! The core language: terms, telescopes, patterns, declarations and
//! capture-avoiding substitution.
//!
//! Binders carry globally unique identities (see [`Var`]), so terms are
//! compared up to alpha-equivalence with [`Term::alpha_eq`] and structural
//! equality is only used where identities are known to coincide.

mod decl;
mod pretty;
mod subst;
mod term;

pub use decl::{
    Binding, Clause, CtorRow, DataDecl, Declaration, FuncDecl, GlobalKind, Pattern, Signature,
    Telescope,
};
pub use pretty::PatternDisplay;
pub use subst::Substitution;
pub use term::{Name, Term, Var};

use thiserror::Error;

/// Violations of internal preconditions. These indicate a bug upstream of the
/// operation that reports them rather than an ill-typed program.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("variable `{0}` is bound twice in a disjoint union")]
    Overlap(String),
    #[error("pattern binding `{0}` has no type; patterns must be checked first")]
    UntypedBinding(String),
    #[error("an impossible pattern has no term form")]
    ImpossibleHasNoTerm,
    #[error("cannot match {terms} terms against {patterns} patterns")]
    LengthMismatch { terms: usize, patterns: usize },
    #[error("name `{0}` is already declared")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
