//! Prints surface syntax back to ASCII source text that parses to the same
//! tree.

use std::fmt::Write;

use super::ast::{Binder, ClauseSyn, Decl, Expr, ExprKind, Pat, Row};

pub fn print_file(decls: &[Decl]) -> String {
    let mut out = String::new();
    for (i, d) in decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_decl(d, &mut out);
    }
    out
}

fn print_decl(d: &Decl, out: &mut String) {
    match d {
        Decl::Data {
            name, params, rows, ..
        } => {
            write!(out, "data {}{} : Type", name.name, binders(params)).unwrap();
            out.push('\n');
            for r in rows {
                print_row(r, out);
            }
        }
        Decl::Def {
            name,
            params,
            result,
            clauses,
            ..
        } => {
            write!(
                out,
                "def {}{} : {}",
                name.name,
                binders(params),
                print_expr(result)
            )
            .unwrap();
            out.push('\n');
            for c in clauses {
                print_clause(c, out);
            }
        }
    }
}

fn print_row(r: &Row, out: &mut String) {
    out.push_str("  | ");
    if let Some(ps) = &r.patterns {
        write!(out, "{} => ", patterns(ps)).unwrap();
    }
    writeln!(out, "{}{}", r.name.name, binders(&r.fields)).unwrap();
}

fn print_clause(c: &ClauseSyn, out: &mut String) {
    out.push_str("  |");
    if !c.patterns.is_empty() {
        write!(out, " {}", patterns(&c.patterns)).unwrap();
    }
    if let Some(body) = &c.body {
        write!(out, " => {}", print_expr(body)).unwrap();
    }
    out.push('\n');
}

fn binders(bs: &[Binder]) -> String {
    bs.iter().map(|b| format!(" {}", binder(b))).collect()
}

fn binder(b: &Binder) -> String {
    let names: Vec<&str> = b.names.iter().map(|n| n.name.as_str()).collect();
    format!("({} : {})", names.join(" "), print_expr(&b.ty))
}

pub fn patterns(ps: &[Pat]) -> String {
    ps.iter()
        .map(|p| pattern(p, false))
        .collect::<Vec<_>>()
        .join(", ")
}

fn pattern(p: &Pat, nested: bool) -> String {
    match p {
        Pat::Impossible(_) => "impossible".to_string(),
        Pat::Ident(id, args) if args.is_empty() => id.name.clone(),
        Pat::Ident(id, args) => {
            let mut s = id.name.clone();
            for a in args {
                s.push(' ');
                s.push_str(&pattern(a, true));
            }
            if nested {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

pub fn print_expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Lam(x, body) => format!("fn {} => {}", x.name, print_expr(body)),
        ExprKind::Pi(names, dom, cod) => {
            let names: Vec<&str> = names.iter().map(|n| n.name.as_str()).collect();
            format!(
                "({} : {}) -> {}",
                names.join(" "),
                print_expr(dom),
                print_expr(cod)
            )
        }
        ExprKind::Arrow(dom, cod) => {
            let d = match dom.kind {
                ExprKind::Lam(..) | ExprKind::Pi(..) | ExprKind::Arrow(..) => paren(dom),
                _ => print_expr(dom),
            };
            format!("{d} -> {}", print_expr(cod))
        }
        ExprKind::App(head, args) => {
            let mut s = match head.kind {
                ExprKind::Ident(_) | ExprKind::Type => print_expr(head),
                _ => paren(head),
            };
            for a in args {
                s.push(' ');
                match a.kind {
                    ExprKind::Ident(_) | ExprKind::Type => s.push_str(&print_expr(a)),
                    _ => s.push_str(&paren(a)),
                }
            }
            s
        }
        ExprKind::Ident(x) => x.clone(),
        ExprKind::Type => "Type".to_string(),
    }
}

fn paren(e: &Expr) -> String {
    format!("({})", print_expr(e))
}
