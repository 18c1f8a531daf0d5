//! A dependently typed core language with simpler indexed types: data types
//! whose constructors are guarded by pattern rows over the data telescope
//! instead of carrying index equations.
//!
//! The pipeline is [`frontend`] (text to core declarations), [`check`]
//! (bidirectional type checking), [`coverage`] (clause exhaustiveness),
//! [`eval`] (weak-head and full normalization) and [`translate`] (GADT-style
//! constructor types). [`program`] strings them together.

pub mod check;
pub mod coverage;
pub mod diagnostic;
pub mod eval;
pub mod frontend;
pub mod pattern;
pub mod program;
pub mod syntax;
pub mod translate;

pub use check::{check_signature, CheckOptions, CheckedProgram, TypeError};
pub use diagnostic::{Diagnostic, ErrorCode};
pub use eval::{EvalError, EvalOptions, Evaluator};
pub use pattern::{match_terms, to_term, to_terms, vars_pats, MatchOutcome};
pub use program::{eval_str, load, load_str, resolve_str, Loaded};
pub use syntax::{
    Clause, CtorRow, DataDecl, Declaration, FuncDecl, Pattern, Signature, Substitution, Telescope,
    Term, Var,
};
