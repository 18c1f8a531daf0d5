//! Test support: corpus access, a first-order unification oracle and an
//! enumerator of closed well-typed values.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;

use sit_core::eval::{EvalOptions, Evaluator};
use sit_core::{
    load, CheckOptions, CtorRow, DataDecl, Loaded, Pattern, Signature, Substitution, Telescope,
    Term, Var,
};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn sit_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "sit"))
        .collect();
    files.sort();
    files
}

pub fn corpus_files() -> Vec<PathBuf> {
    sit_files(&corpus_dir())
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

pub fn load_path(path: &Path) -> Loaded {
    load(
        &path.display().to_string(),
        &read(path),
        &CheckOptions::default(),
    )
    .unwrap_or_else(|d| panic!("{}", d.render(&path.display().to_string())))
}

pub fn load_corpus(name: &str) -> Loaded {
    load_path(&corpus_dir().join(name))
}

/// Negative fixtures with the code named in their `-- expect:` header.
pub fn negative_fixtures() -> Vec<(PathBuf, String)> {
    sit_files(&corpus_dir().join("negative"))
        .into_iter()
        .map(|p| {
            let text = read(&p);
            let code = text
                .lines()
                .find_map(|l| l.strip_prefix("-- expect:"))
                .unwrap_or_else(|| panic!("{} has no expect header", p.display()))
                .trim()
                .to_string();
            (p, code)
        })
        .collect()
}

/// The patterns a row is matched with; a plain row binds every index.
pub fn row_patterns(data: &DataDecl, row: &CtorRow) -> Vec<Pattern> {
    match &row.patterns {
        Some(ps) => ps.clone(),
        None => data
            .telescope
            .iter()
            .map(|b| Pattern::Bind(b.var.clone(), Some(b.ty.clone())))
            .collect(),
    }
}

/// The term form of a pattern, written independently of the library.
pub fn pattern_term(p: &Pattern) -> Term {
    match p {
        Pattern::Bind(x, _) => Term::VarCall(x.clone(), vec![]),
        Pattern::Con(c, ps) => Term::ConCall(c.clone(), ps.iter().map(pattern_term).collect()),
        Pattern::Impossible => panic!("impossible pattern has no term"),
    }
}

pub fn pattern_vars(p: &Pattern, out: &mut Vec<Var>) {
    match p {
        Pattern::Bind(x, _) => out.push(x.clone()),
        Pattern::Con(_, ps) => ps.iter().for_each(|q| pattern_vars(q, out)),
        Pattern::Impossible => {}
    }
}

// ---------------------------------------------------------------------------
// First-order unification

#[derive(Clone, Debug, PartialEq)]
pub enum Unified {
    Solved(HashMap<Var, Term>),
    /// Two different constructors meet, or a flexible variable occurs in
    /// what it must equal.
    Clash,
    /// No clash, but some rigid non-constructor term meets a constructor
    /// or a different rigid term.
    Stuck,
}

fn flex_of<'a>(t: &'a Term, flex: &HashSet<Var>) -> Option<&'a Var> {
    match t {
        Term::VarCall(x, args) if args.is_empty() && flex.contains(x) => Some(x),
        _ => None,
    }
}

/// Solves `lhs = rhs` pointwise, where only variables in `flex` may be
/// assigned. Clashes anywhere win over stuck pairs.
pub fn unify(lhs: &[Term], rhs: &[Term], flex: &HashSet<Var>) -> Unified {
    assert_eq!(lhs.len(), rhs.len());
    let mut work: Vec<(Term, Term)> = lhs.iter().cloned().zip(rhs.iter().cloned()).rev().collect();
    let mut solution: Vec<(Var, Term)> = Vec::new();
    let mut stuck = false;
    while let Some((a, b)) = work.pop() {
        let (x, t) = match (flex_of(&a, flex), flex_of(&b, flex)) {
            (Some(x), Some(y)) if x == y => continue,
            (Some(x), _) => (x.clone(), b),
            (_, Some(y)) => (y.clone(), a),
            _ => {
                match (&a, &b) {
                    (Term::ConCall(c, xs), Term::ConCall(d, ys)) => {
                        if c != d || xs.len() != ys.len() {
                            return Unified::Clash;
                        }
                        work.extend(xs.iter().cloned().zip(ys.iter().cloned()).rev());
                    }
                    _ if a.alpha_eq(&b) => {}
                    _ => stuck = true,
                }
                continue;
            }
        };
        if t.occurs_free(&x) {
            return Unified::Clash;
        }
        let s = Substitution::singleton(x.clone(), t.clone());
        for (l, r) in work.iter_mut() {
            *l = l.subst(&s);
            *r = r.subst(&s);
        }
        for (_, v) in solution.iter_mut() {
            *v = v.subst(&s);
        }
        solution.push((x, t));
    }
    if stuck {
        Unified::Stuck
    } else {
        Unified::Solved(solution.into_iter().collect())
    }
}

// ---------------------------------------------------------------------------
// Closed value enumeration

/// Enumerates closed well-typed constructor terms. Constructor availability
/// is decided by the unification oracle, not by the library's matcher.
pub struct Enumerator<'s> {
    sig: &'s Signature,
    ev: Evaluator<'s>,
    /// Bound on values kept per type and depth.
    pub cap: usize,
    memo: RefCell<HashMap<(String, usize), Vec<Term>>>,
}

impl<'s> Enumerator<'s> {
    pub fn new(sig: &'s Signature, cap: usize) -> Enumerator<'s> {
        Enumerator {
            sig,
            ev: Evaluator::new(sig, EvalOptions::default()),
            cap,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Values of `ty` whose constructor depth is at most `depth`, smaller
    /// ones first. Types are values of `Type`.
    pub fn values(&self, ty: &Term, depth: usize) -> Vec<Term> {
        if depth == 0 {
            return Vec::new();
        }
        let ty = self.ev.normalize(ty).unwrap();
        let key = (ty.to_string(), depth);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let mut out = self.values(&ty, depth - 1);
        let mut seen: HashSet<String> = out.iter().map(Term::to_string).collect();
        let mut add = |t: Term, out: &mut Vec<Term>| {
            if out.len() < self.cap && seen.insert(t.to_string()) {
                out.push(t);
            }
        };
        match &ty {
            Term::Univ => {
                for d in self.sig.data_types() {
                    for us in self.tuples(&d.telescope, depth - 1, self.cap) {
                        add(Term::DataCall(d.name.clone(), us), &mut out);
                    }
                }
            }
            Term::DataCall(d, us) => {
                let data = self.sig.data(d).unwrap();
                for row in &data.ctors {
                    let Some(fields) = self.fields(data, row, us) else {
                        continue;
                    };
                    for vs in self.tuples(&fields, depth - 1, self.cap) {
                        add(Term::ConCall(row.name.clone(), vs), &mut out);
                    }
                }
            }
            _ => {}
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// The fields of `row` at closed indices `us`, if the row unifies.
    pub fn fields(&self, data: &DataDecl, row: &CtorRow, us: &[Term]) -> Option<Telescope> {
        let ps = row_patterns(data, row);
        let mut vars = Vec::new();
        ps.iter().for_each(|p| pattern_vars(p, &mut vars));
        let flex: HashSet<Var> = vars.iter().cloned().collect();
        let targets: Vec<Term> = ps.iter().map(pattern_term).collect();
        match unify(us, &targets, &flex) {
            Unified::Solved(m) => {
                let s = Substitution::from_pairs(m.into_iter().collect());
                Some(row.fields.subst(&s))
            }
            Unified::Clash => None,
            Unified::Stuck => panic!("closed indices cannot be stuck"),
        }
    }

    /// Dependent tuples for a telescope, at most `limit` of them.
    pub fn tuples(&self, tele: &Telescope, depth: usize, limit: usize) -> Vec<Vec<Term>> {
        let entries = tele.entries();
        let mut out = Vec::new();
        self.extend(entries, Vec::new(), Vec::new(), depth, limit, &mut out);
        out
    }

    fn extend(
        &self,
        rest: &[sit_core::syntax::Binding],
        vars: Vec<Var>,
        prefix: Vec<Term>,
        depth: usize,
        limit: usize,
        out: &mut Vec<Vec<Term>>,
    ) {
        if out.len() >= limit {
            return;
        }
        let Some((b, rest)) = rest.split_first() else {
            out.push(prefix);
            return;
        };
        let ty = b.ty.instantiate(&vars, &prefix);
        for v in self.values(&ty, depth) {
            let mut vars = vars.clone();
            vars.push(b.var.clone());
            let mut prefix = prefix.clone();
            prefix.push(v);
            self.extend(rest, vars, prefix, depth, limit, out);
            if out.len() >= limit {
                return;
            }
        }
    }
}

impl Enumerator<'_> {
    /// One tuple with each entry drawn uniformly from the values of its
    /// type, or `None` when some type has no values.
    pub fn random_tuple(
        &self,
        tele: &Telescope,
        depth: usize,
        rng: &mut impl Rng,
    ) -> Option<Vec<Term>> {
        let mut vars = Vec::new();
        let mut out = Vec::new();
        for b in tele {
            let ty = b.ty.instantiate(&vars, &out);
            let vs = self.values(&ty, depth);
            out.push(vs.choose(rng)?.clone());
            vars.push(b.var.clone());
        }
        Some(out)
    }

    /// Up to `n` distinct tuples: all of them when there are few, otherwise
    /// a random sample.
    pub fn sample_tuples(
        &self,
        tele: &Telescope,
        depth: usize,
        n: usize,
        rng: &mut impl Rng,
    ) -> Vec<Vec<Term>> {
        let all = self.tuples(tele, depth, n + 1);
        if all.len() <= n {
            return all;
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for _ in 0..n * 20 {
            if out.len() == n {
                break;
            }
            if let Some(t) = self.random_tuple(tele, depth, rng) {
                let key: Vec<String> = t.iter().map(Term::to_string).collect();
                if seen.insert(key) {
                    out.push(t);
                }
            }
        }
        out
    }
}

/// Takes `n` items spread evenly over `items`.
pub fn spread<T: Clone>(items: &[T], n: usize) -> Vec<T> {
    if items.len() <= n {
        return items.to_vec();
    }
    (0..n).map(|i| items[i * items.len() / n].clone()).collect()
}

/// Peano numeral.
pub fn numeral(n: usize) -> Term {
    (0..n).fold(Term::con("zero", vec![]), |t, _| Term::con("suc", vec![t]))
}
