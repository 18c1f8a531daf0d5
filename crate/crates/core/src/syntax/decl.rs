use std::collections::HashMap;
use std::sync::Arc;

use super::subst::disjoint_concat;
use super::{CoreError, Name, Substitution, Term, Var};
use crate::diagnostic::Span;

/// One entry `x : A` of a telescope or context.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub var: Var,
    pub ty: Term,
}

impl Binding {
    pub fn new(var: Var, ty: Term) -> Binding {
        Binding { var, ty }
    }
}

/// An ordered list of bindings where later types may mention earlier binders.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Telescope {
    entries: Vec<Binding>,
}

impl Telescope {
    pub fn new() -> Telescope {
        Telescope::default()
    }

    pub fn from_bindings(entries: Vec<Binding>) -> Telescope {
        Telescope { entries }
    }

    pub fn push(&mut self, var: Var, ty: Term) {
        self.entries.push(Binding { var, ty });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Binding> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Binding] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Binding> {
        self.entries
    }

    pub fn lookup(&self, x: &Var) -> Option<&Term> {
        self.entries
            .iter()
            .rev()
            .find(|b| &b.var == x)
            .map(|b| &b.ty)
    }

    pub fn contains(&self, x: &Var) -> bool {
        self.entries.iter().any(|b| &b.var == x)
    }

    /// `vars Δ`: the binders in order.
    pub fn vars(&self) -> Vec<Var> {
        self.entries.iter().map(|b| b.var.clone()).collect()
    }

    /// The binders as variable terms.
    pub fn var_terms(&self) -> Vec<Term> {
        self.entries.iter().map(|b| Term::var(&b.var)).collect()
    }

    /// `Θ ⊎ Θ'`.
    pub fn disjoint_union(self, other: Telescope) -> Result<Telescope, CoreError> {
        let left = self.entries.into_iter().map(|b| (b.var, b.ty)).collect();
        let right = other.entries.into_iter().map(|b| (b.var, b.ty)).collect();
        let joined = disjoint_concat(left, right)?;
        Ok(Telescope {
            entries: joined
                .into_iter()
                .map(|(var, ty)| Binding { var, ty })
                .collect(),
        })
    }

    pub fn concat(&self, other: &Telescope) -> Telescope {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Telescope { entries }
    }

    /// Applies a substitution to every type (binders are left alone).
    pub fn subst(&self, s: &Substitution) -> Telescope {
        self.map_types(|t| t.subst(s))
    }

    pub fn instantiate(&self, vars: &[Var], args: &[Term]) -> Telescope {
        self.map_types(|t| t.instantiate(vars, args))
    }

    fn map_types(&self, f: impl Fn(&Term) -> Term) -> Telescope {
        Telescope {
            entries: self
                .entries
                .iter()
                .map(|b| Binding {
                    var: b.var.clone(),
                    ty: f(&b.ty),
                })
                .collect(),
        }
    }

    /// A copy with fresh binders, plus the renaming from old to new.
    pub fn freshen(&self) -> (Telescope, Substitution) {
        let mut renaming = Substitution::new();
        let mut entries = Vec::with_capacity(self.entries.len());
        for b in &self.entries {
            let fresh = b.var.refresh();
            entries.push(Binding {
                var: fresh.clone(),
                ty: b.ty.subst(&renaming),
            });
            renaming.push(b.var.clone(), Term::var(&fresh));
        }
        (Telescope { entries }, renaming)
    }

    /// `Δ → B`.
    pub fn pi_over(&self, codomain: Term) -> Term {
        self.entries.iter().rev().fold(codomain, |acc, b| {
            Term::pi(b.var.clone(), b.ty.clone(), acc)
        })
    }
}

impl<'a> IntoIterator for &'a Telescope {
    type Item = &'a Binding;
    type IntoIter = std::slice::Iter<'a, Binding>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Patterns. Binding types start out empty and are filled by pattern checking.
#[derive(Clone, Debug, PartialEq)]
pub enum Pattern {
    Bind(Var, Option<Term>),
    Con(Name, Vec<Pattern>),
    Impossible,
}

impl Pattern {
    pub fn bind(x: &Var) -> Pattern {
        Pattern::Bind(x.clone(), None)
    }

    pub fn con(name: &str, args: Vec<Pattern>) -> Pattern {
        Pattern::Con(Arc::from(name), args)
    }

    pub fn contains_impossible(&self) -> bool {
        match self {
            Pattern::Impossible => true,
            Pattern::Bind(..) => false,
            Pattern::Con(_, ps) => ps.iter().any(Pattern::contains_impossible),
        }
    }

    /// Binders in left-to-right order, regardless of whether they are typed.
    pub fn binders(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Var>) {
        match self {
            Pattern::Bind(x, _) => out.push(x.clone()),
            Pattern::Con(_, ps) => ps.iter().for_each(|p| p.collect_binders(out)),
            Pattern::Impossible => {}
        }
    }

    /// Depth of nested constructor patterns.
    pub fn depth(&self) -> usize {
        match self {
            Pattern::Con(_, ps) => 1 + ps.iter().map(Pattern::depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

/// A constructor of a data declaration, optionally guarded by a pattern row
/// over the data type's telescope.
#[derive(Clone, Debug, PartialEq)]
pub struct CtorRow {
    pub patterns: Option<Vec<Pattern>>,
    pub name: Name,
    pub fields: Telescope,
    pub span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub patterns: Vec<Pattern>,
    pub body: Option<Term>,
    pub span: Option<Span>,
}

impl Clause {
    pub fn has_impossible(&self) -> bool {
        self.patterns.iter().any(Pattern::contains_impossible)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DataDecl {
    pub name: Name,
    pub telescope: Telescope,
    pub ctors: Vec<CtorRow>,
    pub span: Option<Span>,
}

impl DataDecl {
    pub fn ctor(&self, name: &str) -> Option<&CtorRow> {
        self.ctors.iter().find(|c| &*c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuncDecl {
    pub name: Name,
    pub telescope: Telescope,
    pub result: Term,
    pub clauses: Vec<Clause>,
    pub span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Declaration {
    Data(DataDecl),
    Func(FuncDecl),
}

impl Declaration {
    pub fn name(&self) -> &Name {
        match self {
            Declaration::Data(d) => &d.name,
            Declaration::Func(f) => &f.name,
        }
    }

    pub fn span(&self) -> Option<&Span> {
        match self {
            Declaration::Data(d) => d.span.as_ref(),
            Declaration::Func(f) => f.span.as_ref(),
        }
    }
}

/// What a global name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalKind {
    Data,
    Func,
    Ctor,
}

/// An ordered list of declarations with lookup tables.
///
/// Declaration names share one namespace with constructor names.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    decls: Vec<Declaration>,
    index: HashMap<Name, usize>,
    ctors: HashMap<Name, (usize, usize)>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn declarations(&self) -> &[Declaration] {
        &self.decls
    }

    pub fn kind_of(&self, name: &str) -> Option<GlobalKind> {
        if self.ctors.contains_key(name) {
            return Some(GlobalKind::Ctor);
        }
        self.index.get(name).map(|&i| match self.decls[i] {
            Declaration::Data(_) => GlobalKind::Data,
            Declaration::Func(_) => GlobalKind::Func,
        })
    }

    pub fn data(&self, name: &str) -> Option<&DataDecl> {
        match self.index.get(name).map(|&i| &self.decls[i]) {
            Some(Declaration::Data(d)) => Some(d),
            _ => None,
        }
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        match self.index.get(name).map(|&i| &self.decls[i]) {
            Some(Declaration::Func(f)) => Some(f),
            _ => None,
        }
    }

    /// A constructor together with the data type declaring it.
    pub fn ctor(&self, name: &str) -> Option<(&DataDecl, &CtorRow)> {
        let &(d, c) = self.ctors.get(name)?;
        match &self.decls[d] {
            Declaration::Data(data) => Some((data, &data.ctors[c])),
            Declaration::Func(_) => None,
        }
    }

    pub fn data_types(&self) -> impl Iterator<Item = &DataDecl> {
        self.decls.iter().filter_map(|d| match d {
            Declaration::Data(d) => Some(d),
            _ => None,
        })
    }

    pub fn functions(&self) -> impl Iterator<Item = &FuncDecl> {
        self.decls.iter().filter_map(|d| match d {
            Declaration::Func(f) => Some(f),
            _ => None,
        })
    }

    fn name_taken(&self, name: &str) -> bool {
        self.index.contains_key(name) || self.ctors.contains_key(name)
    }

    /// Appends a declaration without checking it.
    pub fn push(&mut self, decl: Declaration) -> Result<(), CoreError> {
        if self.name_taken(decl.name()) {
            return Err(CoreError::DuplicateName(decl.name().to_string()));
        }
        if let Declaration::Data(d) = &decl {
            let mut seen = std::collections::HashSet::new();
            for c in &d.ctors {
                if self.name_taken(&c.name) || c.name == d.name || !seen.insert(c.name.clone()) {
                    return Err(CoreError::DuplicateName(c.name.to_string()));
                }
            }
        }
        let at = self.decls.len();
        self.index.insert(decl.name().clone(), at);
        if let Declaration::Data(d) = &decl {
            for (i, c) in d.ctors.iter().enumerate() {
                self.ctors.insert(c.name.clone(), (at, i));
            }
        }
        self.decls.push(decl);
        Ok(())
    }

    /// Adds a constructor row to an already declared data type.
    pub(crate) fn push_ctor(&mut self, data: &str, row: CtorRow) -> Result<(), CoreError> {
        if self.name_taken(&row.name) {
            return Err(CoreError::DuplicateName(row.name.to_string()));
        }
        let at = *self
            .index
            .get(data)
            .ok_or_else(|| CoreError::UnknownName(data.to_string()))?;
        let Declaration::Data(d) = &mut self.decls[at] else {
            return Err(CoreError::UnknownName(data.to_string()));
        };
        self.ctors.insert(row.name.clone(), (at, d.ctors.len()));
        d.ctors.push(row);
        Ok(())
    }

    /// Installs the clauses of an already declared function.
    pub(crate) fn set_clauses(&mut self, func: &str, clauses: Vec<Clause>) {
        if let Some(&at) = self.index.get(func) {
            if let Declaration::Func(f) = &mut self.decls[at] {
                f.clauses = clauses;
            }
        }
    }
}
