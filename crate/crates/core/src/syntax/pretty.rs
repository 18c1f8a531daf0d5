use std::fmt;

use super::{Pattern, Term};

const TOP: u8 = 0;
const DOMAIN: u8 = 1;
const ARG: u8 = 2;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, TOP, f)
    }
}

fn write_term(t: &Term, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Univ => f.write_str("Type"),
        Term::VarCall(x, args) => write_call(x.name(), args, prec, f),
        Term::FnCall(n, args) | Term::DataCall(n, args) | Term::ConCall(n, args) => {
            write_call(n, args, prec, f)
        }
        Term::App(head, args) => {
            if prec >= ARG {
                f.write_str("(")?;
            }
            write_term(head, ARG, f)?;
            for a in args {
                f.write_str(" ")?;
                write_term(a, ARG, f)?;
            }
            if prec >= ARG {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Pi(x, dom, cod) => {
            if prec >= DOMAIN {
                f.write_str("(")?;
            }
            if x.is_anonymous() {
                write_term(dom, DOMAIN, f)?;
            } else {
                write!(f, "({} : ", x)?;
                write_term(dom, TOP, f)?;
                f.write_str(")")?;
            }
            f.write_str(" → ")?;
            write_term(cod, TOP, f)?;
            if prec >= DOMAIN {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Lam(x, body) => {
            if prec >= DOMAIN {
                f.write_str("(")?;
            }
            write!(f, "fn {} => ", x)?;
            write_term(body, TOP, f)?;
            if prec >= DOMAIN {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

fn write_call(head: &str, args: &[Term], prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if args.is_empty() {
        return f.write_str(head);
    }
    if prec >= ARG {
        f.write_str("(")?;
    }
    f.write_str(head)?;
    for a in args {
        f.write_str(" ")?;
        write_term(a, ARG, f)?;
    }
    if prec >= ARG {
        f.write_str(")")?;
    }
    Ok(())
}

/// Displays a comma-separated pattern row.
pub struct PatternDisplay<'a>(pub &'a [Pattern]);

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_pattern(p, false, f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pattern(self, false, f)
    }
}

fn write_pattern(p: &Pattern, nested: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match p {
        Pattern::Bind(x, _) => write!(f, "{}", x),
        Pattern::Impossible => f.write_str("impossible"),
        Pattern::Con(c, ps) if ps.is_empty() => f.write_str(c),
        Pattern::Con(c, ps) => {
            if nested {
                f.write_str("(")?;
            }
            f.write_str(c)?;
            for q in ps {
                f.write_str(" ")?;
                write_pattern(q, true, f)?;
            }
            if nested {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}
