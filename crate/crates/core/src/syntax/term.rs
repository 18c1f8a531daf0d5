use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Global names: data types, constructors and functions.
pub type Name = Arc<str>;

static NEXT_VAR_ID: AtomicU64 = AtomicU64::new(1);

/// A variable. Identity is the numeric id, the name is kept for printing only.
#[derive(Clone)]
pub struct Var {
    id: u64,
    name: Name,
}

impl Var {
    pub fn fresh(name: &str) -> Var {
        Var {
            id: NEXT_VAR_ID.fetch_add(1, Ordering::Relaxed),
            name: Arc::from(name),
        }
    }

    /// A new variable with the same printing name.
    pub fn refresh(&self) -> Var {
        Var {
            id: NEXT_VAR_ID.fetch_add(1, Ordering::Relaxed),
            name: self.name.clone(),
        }
    }

    /// A new variable whose printing name is primed, used when a binder has to
    /// be renamed to avoid capture.
    pub fn primed(&self) -> Var {
        Var::fresh(&format!("{}'", self.name))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Anonymous binders come from non-dependent arrows `A -> B`.
    pub fn is_anonymous(&self) -> bool {
        &*self.name == "_"
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Var) -> bool {
        self.id == other.id
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.name, self.id)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Core terms.
///
/// Definitions (functions, data types, constructors) are always applied to
/// exactly their declared arity. `App` is the general application `u v̄` for
/// heads that are not variables: a lambda (a beta-redex) or a stuck function
/// call whose result is itself a function.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    FnCall(Name, Vec<Term>),
    VarCall(Var, Vec<Term>),
    DataCall(Name, Vec<Term>),
    ConCall(Name, Vec<Term>),
    App(Box<Term>, Vec<Term>),
    Pi(Var, Box<Term>, Box<Term>),
    Lam(Var, Box<Term>),
    Univ,
}

impl Term {
    pub fn var(v: &Var) -> Term {
        Term::VarCall(v.clone(), Vec::new())
    }

    pub fn con(name: &str, args: Vec<Term>) -> Term {
        Term::ConCall(Arc::from(name), args)
    }

    pub fn data(name: &str, args: Vec<Term>) -> Term {
        Term::DataCall(Arc::from(name), args)
    }

    pub fn func(name: &str, args: Vec<Term>) -> Term {
        Term::FnCall(Arc::from(name), args)
    }

    pub fn pi(binder: Var, domain: Term, codomain: Term) -> Term {
        Term::Pi(binder, Box::new(domain), Box::new(codomain))
    }

    /// Non-dependent function type.
    pub fn arrow(domain: Term, codomain: Term) -> Term {
        Term::pi(Var::fresh("_"), domain, codomain)
    }

    pub fn lam(binder: Var, body: Term) -> Term {
        Term::Lam(binder, Box::new(body))
    }

    /// Applies a term to further arguments, keeping variable spines flat.
    pub fn apply(self, args: Vec<Term>) -> Term {
        if args.is_empty() {
            return self;
        }
        match self {
            Term::VarCall(x, mut spine) => {
                spine.extend(args);
                Term::VarCall(x, spine)
            }
            Term::App(head, mut spine) => {
                spine.extend(args);
                Term::App(head, spine)
            }
            head => Term::App(Box::new(head), args),
        }
    }

    pub fn is_neutral_var(&self) -> bool {
        matches!(self, Term::VarCall(_, args) if args.is_empty())
    }

    pub fn free_vars(&self) -> HashSet<Var> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &Var) -> bool {
        match self {
            Term::VarCall(y, args) => y == x || args.iter().any(|a| a.occurs_free(x)),
            Term::FnCall(_, args) | Term::DataCall(_, args) | Term::ConCall(_, args) => {
                args.iter().any(|a| a.occurs_free(x))
            }
            Term::App(head, args) => head.occurs_free(x) || args.iter().any(|a| a.occurs_free(x)),
            Term::Pi(y, dom, cod) => dom.occurs_free(x) || (y != x && cod.occurs_free(x)),
            Term::Lam(y, body) => y != x && body.occurs_free(x),
            Term::Univ => false,
        }
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut HashSet<Var>) {
        match self {
            Term::VarCall(x, args) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Term::FnCall(_, args) | Term::DataCall(_, args) | Term::ConCall(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Term::App(head, args) => {
                head.collect_free(bound, out);
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Term::Pi(x, dom, cod) => {
                dom.collect_free(bound, out);
                bound.push(x.clone());
                cod.collect_free(bound, out);
                bound.pop();
            }
            Term::Lam(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Univ => {}
        }
    }

    /// Every binder occurring in the term, in pre-order.
    pub fn binders(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Var>) {
        match self {
            Term::VarCall(_, args)
            | Term::FnCall(_, args)
            | Term::DataCall(_, args)
            | Term::ConCall(_, args) => args.iter().for_each(|a| a.collect_binders(out)),
            Term::App(head, args) => {
                head.collect_binders(out);
                args.iter().for_each(|a| a.collect_binders(out));
            }
            Term::Pi(x, dom, cod) => {
                out.push(x.clone());
                dom.collect_binders(out);
                cod.collect_binders(out);
            }
            Term::Lam(x, body) => {
                out.push(x.clone());
                body.collect_binders(out);
            }
            Term::Univ => {}
        }
    }

    /// Alpha-equivalence, without any reduction.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), false)
    }

    /// Alpha-equivalence up to lambda eta (`fn x => f x` equals `f` when `x`
    /// is not free in `f`). Both sides are expected to be normal.
    pub fn alpha_eta_eq(&self, other: &Term) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), true)
    }

    /// Depth of nested constructor applications (a nullary constructor has depth 1).
    pub fn con_depth(&self) -> usize {
        match self {
            Term::ConCall(_, args) => 1 + args.iter().map(Term::con_depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

/// `env` pairs a left binder with the right binder it is identified with.
fn alpha_eq_in(left: &Term, right: &Term, env: &mut Vec<(Var, Var)>, eta: bool) -> bool {
    match (left, right) {
        (Term::Lam(x, body), Term::Lam(y, body2)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_in(body, body2, env, eta);
            env.pop();
            r
        }
        (Term::Lam(x, body), other) if eta => {
            let y = x.refresh();
            let expanded = other.clone().apply(vec![Term::var(&y)]);
            env.push((x.clone(), y));
            let r = alpha_eq_in(body, &expanded, env, eta);
            env.pop();
            r
        }
        (other, Term::Lam(y, body)) if eta => {
            let x = y.refresh();
            let expanded = other.clone().apply(vec![Term::var(&x)]);
            env.push((x, y.clone()));
            let r = alpha_eq_in(&expanded, body, env, eta);
            env.pop();
            r
        }
        (Term::Pi(x, a, b), Term::Pi(y, a2, b2)) => {
            if !alpha_eq_in(a, a2, env, eta) {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_in(b, b2, env, eta);
            env.pop();
            r
        }
        (Term::VarCall(x, xs), Term::VarCall(y, ys)) => {
            same_var(x, y, env) && args_eq(xs, ys, env, eta)
        }
        (Term::FnCall(f, xs), Term::FnCall(g, ys))
        | (Term::DataCall(f, xs), Term::DataCall(g, ys))
        | (Term::ConCall(f, xs), Term::ConCall(g, ys)) => f == g && args_eq(xs, ys, env, eta),
        (Term::App(h, xs), Term::App(h2, ys)) => {
            alpha_eq_in(h, h2, env, eta) && args_eq(xs, ys, env, eta)
        }
        (Term::Univ, Term::Univ) => true,
        _ => false,
    }
}

fn same_var(x: &Var, y: &Var, env: &[(Var, Var)]) -> bool {
    // innermost binding wins
    for (l, r) in env.iter().rev() {
        if l == x || r == y {
            return l == x && r == y;
        }
    }
    x == y
}

fn args_eq(xs: &[Term], ys: &[Term], env: &mut Vec<(Var, Var)>, eta: bool) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| alpha_eq_in(a, b, env, eta))
}
