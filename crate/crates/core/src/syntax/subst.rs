use std::collections::{HashMap, HashSet};

use super::{CoreError, Term, Var};

/// An ordered list of replacements, applied one after another.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Substitution {
    entries: Vec<(Var, Term)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn singleton(x: Var, v: Term) -> Substitution {
        Substitution {
            entries: vec![(x, v)],
        }
    }

    pub fn from_pairs(entries: Vec<(Var, Term)>) -> Substitution {
        Substitution { entries }
    }

    pub fn push(&mut self, x: Var, v: Term) {
        self.entries.push((x, v));
    }

    pub fn entries(&self) -> &[(Var, Term)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn domain(&self) -> Vec<Var> {
        self.entries.iter().map(|(x, _)| x.clone()).collect()
    }

    /// The replacement recorded for `x`, if any.
    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.entries.iter().find(|(y, _)| y == x).map(|(_, v)| v)
    }

    /// `u.subst(&s1.compose(&s2)) == u.subst(&s1).subst(&s2)` for every term `u`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Substitution { entries }
    }

    /// Concatenation of two substitutions with disjoint domains.
    pub fn disjoint_union(self, other: Substitution) -> Result<Substitution, CoreError> {
        Ok(Substitution {
            entries: disjoint_concat(self.entries, other.entries)?,
        })
    }
}

/// Concatenates two binding lists, failing when a variable appears in both.
pub(crate) fn disjoint_concat<T>(
    mut left: Vec<(Var, T)>,
    right: Vec<(Var, T)>,
) -> Result<Vec<(Var, T)>, CoreError> {
    let seen: HashSet<&Var> = left.iter().map(|(x, _)| x).collect();
    if let Some((dup, _)) = right.iter().find(|(x, _)| seen.contains(x)) {
        return Err(CoreError::Overlap(dup.name().to_string()));
    }
    left.extend(right);
    Ok(left)
}

impl Term {
    /// Applies the substitution's pairs in order.
    pub fn subst(&self, s: &Substitution) -> Term {
        let mut out = self.clone();
        for (x, v) in &s.entries {
            out = out.subst_one(x, v);
        }
        out
    }

    /// `u[v/x]`, renaming binders that would capture free variables of `v`.
    pub fn subst_one(&self, x: &Var, v: &Term) -> Term {
        if !self.occurs_free(x) {
            return self.clone();
        }
        let mut map = HashMap::new();
        map.insert(x.clone(), v.clone());
        replace(self, &map, &v.free_vars())
    }

    /// Simultaneous substitution of `args` for `vars`, as in `A[ū/vars Δ]`.
    ///
    /// Coincides with the sequential reading whenever no argument mentions
    /// one of `vars`, which is the case for telescope instantiation.
    pub fn instantiate(&self, vars: &[Var], args: &[Term]) -> Term {
        debug_assert_eq!(vars.len(), args.len());
        if vars.is_empty() {
            return self.clone();
        }
        let map: HashMap<Var, Term> = vars.iter().cloned().zip(args.iter().cloned()).collect();
        let avoid = args.iter().flat_map(|a| a.free_vars()).collect();
        replace(self, &map, &avoid)
    }
}

fn replace(term: &Term, map: &HashMap<Var, Term>, avoid: &HashSet<Var>) -> Term {
    let go = |t: &Term| replace(t, map, avoid);
    match term {
        Term::VarCall(x, args) => {
            let args: Vec<Term> = args.iter().map(go).collect();
            match map.get(x) {
                Some(v) => v.clone().apply(args),
                None => Term::VarCall(x.clone(), args),
            }
        }
        Term::FnCall(f, args) => Term::FnCall(f.clone(), args.iter().map(go).collect()),
        Term::DataCall(d, args) => Term::DataCall(d.clone(), args.iter().map(go).collect()),
        Term::ConCall(c, args) => Term::ConCall(c.clone(), args.iter().map(go).collect()),
        Term::App(head, args) => go(head).apply(args.iter().map(go).collect()),
        Term::Pi(x, dom, cod) => {
            let dom = go(dom);
            let (x, cod) = under_binder(x, cod, map, avoid);
            Term::Pi(x, Box::new(dom), Box::new(cod))
        }
        Term::Lam(x, body) => {
            let (x, body) = under_binder(x, body, map, avoid);
            Term::Lam(x, Box::new(body))
        }
        Term::Univ => Term::Univ,
    }
}

fn under_binder(
    x: &Var,
    body: &Term,
    map: &HashMap<Var, Term>,
    avoid: &HashSet<Var>,
) -> (Var, Term) {
    let shadows = map.contains_key(x);
    let captures = avoid.contains(x);
    if !shadows && !captures {
        return (x.clone(), replace(body, map, avoid));
    }
    let mut inner = map.clone();
    inner.remove(x);
    if captures {
        let renamed = x.primed();
        inner.insert(x.clone(), Term::var(&renamed));
        let mut avoid = avoid.clone();
        avoid.insert(renamed.clone());
        (renamed, replace(body, &inner, &avoid))
    } else {
        (x.clone(), replace(body, &inner, avoid))
    }
}
