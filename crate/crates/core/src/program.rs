//! Whole-file pipeline: parse, resolve, check, and evaluate expressions
//! against the result.

use crate::check::{check_signature, CheckOptions, CheckedProgram, Checker};
use crate::diagnostic::{Diagnostic, ErrorCode};
use crate::eval::{EvalOptions, Evaluator};
use crate::frontend::{parse_expr, parse_file, resolve, resolve_expr, Globals};
use crate::syntax::{Declaration, Telescope, Term};

/// Parses and resolves a file without type checking it.
pub fn resolve_str(file: &str, text: &str) -> Result<(Vec<Declaration>, Globals), Diagnostic> {
    let surface = parse_file(file, text).map_err(|e| e.to_diagnostic())?;
    resolve(&surface).map_err(|e| e.to_diagnostic())
}

/// A checked file together with what is needed to elaborate expressions in
/// it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub program: CheckedProgram,
    pub globals: Globals,
}

pub fn load(file: &str, text: &str, opts: &CheckOptions) -> Result<Loaded, Diagnostic> {
    let (decls, globals) = resolve_str(file, text)?;
    let program = check_signature(decls, opts).map_err(|e| e.to_diagnostic())?;
    Ok(Loaded { program, globals })
}

pub fn load_str(file: &str, text: &str, opts: &CheckOptions) -> Result<CheckedProgram, Diagnostic> {
    load(file, text, opts).map(|l| l.program)
}

/// Parses `expr`, checks it when its type can be inferred, and returns its
/// normal form.
pub fn eval_str(loaded: &Loaded, expr: &str, opts: &EvalOptions) -> Result<Term, Diagnostic> {
    let surface = parse_expr("<expr>", expr).map_err(|e| e.to_diagnostic())?;
    let term = resolve_expr(&loaded.globals, &surface).map_err(|e| e.to_diagnostic())?;
    let sig = &loaded.program.signature;
    let ck = Checker::new(sig, opts.clone());
    match ck.infer(&Telescope::new(), &term) {
        Ok(_) => {}
        Err(e) if e.code == ErrorCode::CannotInfer => {}
        Err(e) => return Err(e.to_diagnostic()),
    }
    Evaluator::new(sig, opts.clone())
        .normalize(&term)
        .map_err(|e| crate::check::TypeError::from(e).to_diagnostic())
}
