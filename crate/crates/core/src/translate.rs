//! Translation of simpler indexed types into general indexed types, where
//! every constructor has an ordinary Pi type ending in the data type applied
//! to the row's patterns.

use std::fmt::Write;

use crate::pattern::{to_terms, vars_pats};
use crate::syntax::{CoreError, CtorRow, DataDecl, Name, Pattern, Signature, Telescope, Term};

/// A data type in GADT form.
#[derive(Clone, Debug)]
pub struct GeneralData {
    pub name: Name,
    pub telescope: Telescope,
    pub ctors: Vec<(Name, Term)>,
}

/// The row's patterns; a plain row matches every index with its telescope
/// variable.
fn row_patterns(data: &DataDecl, row: &CtorRow) -> Vec<Pattern> {
    match &row.patterns {
        Some(ps) => ps.clone(),
        None => data
            .telescope
            .iter()
            .map(|b| Pattern::Bind(b.var.clone(), Some(b.ty.clone())))
            .collect(),
    }
}

fn ctor_type(data: &DataDecl, row: &CtorRow) -> Result<Term, CoreError> {
    let ps = row_patterns(data, row);
    let tele = vars_pats(&ps)?.concat(&row.fields);
    let target = Term::DataCall(data.name.clone(), to_terms(&ps)?);
    let (fresh, s) = tele.freshen();
    Ok(fresh.pi_over(target.subst(&s)))
}

pub fn to_general(data: &DataDecl) -> Result<GeneralData, CoreError> {
    let ctors = data
        .ctors
        .iter()
        .map(|row| Ok((row.name.clone(), ctor_type(data, row)?)))
        .collect::<Result<Vec<_>, CoreError>>()?;
    Ok(GeneralData {
        name: data.name.clone(),
        telescope: data.telescope.clone(),
        ctors,
    })
}

/// The type of a bare reference to constructor `c`.
pub fn synth_ctor_type(sig: &Signature, c: &str) -> Result<Term, CoreError> {
    let (data, row) = sig
        .ctor(c)
        .ok_or_else(|| CoreError::UnknownName(c.to_string()))?;
    ctor_type(data, row)
}

pub fn emit_general(g: &GeneralData) -> String {
    let mut out = String::new();
    let kind = g.telescope.pi_over(Term::Univ);
    write!(out, "data {} : {kind}", g.name).unwrap();
    if !g.ctors.is_empty() {
        out.push_str(" where");
    }
    out.push('\n');
    for (name, ty) in &g.ctors {
        writeln!(out, "  {name} : {ty}").unwrap();
    }
    out
}
