//! Acceptance suite. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sit_core::check::{check_args, check_term, Checker};
use sit_core::eval::{Dispatch, EvalOptions, Evaluator};
use sit_core::translate::to_general;
use sit_core::{
    load, match_terms, CheckOptions, Loaded, MatchOutcome, Pattern, Signature, Substitution,
    Telescope, Term, Var,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn corpus() -> Vec<(String, Loaded)> {
    corpus_files()
        .iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                load_path(p),
            )
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------

fn ac1_corpus() -> Outcome {
    let files = corpus_files();
    let names: Vec<String> = files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    for needed in ["nat.sit", "list.sit", "vec.sit", "fin.sit", "normalize.sit"] {
        ensure(names.iter().any(|n| n == needed), || {
            format!("{needed} missing")
        })?;
    }
    let texts: Vec<(String, String)> = files
        .iter()
        .map(|p| (p.display().to_string(), read(p)))
        .collect();
    let start = Instant::now();
    for (name, text) in &texts {
        let loaded = load(name, text, &CheckOptions::default()).map_err(|d| d.render(name))?;
        ensure(loaded.program.warnings.is_empty(), || {
            format!("{name}: unexpected warnings {:?}", loaded.program.warnings)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    let sig = &load_corpus("normalize.sit").program.signature;
    for name in ["TermTy", "Term", "Bool", "Nat"] {
        ensure(sig.data(name).is_some(), || {
            format!("normalize.sit lacks {name}")
        })?;
    }
    for name in ["termTy", "not", "ifElse", "normalize"] {
        ensure(sig.func(name).is_some(), || {
            format!("normalize.sit lacks {name}")
        })?;
    }
    Ok(format!(
        "{} files checked with coverage in {elapsed:?}",
        texts.len()
    ))
}

fn ac2_negative() -> Outcome {
    let fixtures = negative_fixtures();
    ensure(fixtures.len() >= 10, || {
        format!("only {} fixtures", fixtures.len())
    })?;
    let mut codes = HashSet::new();
    for (path, expected) in &fixtures {
        let name = path.display().to_string();
        match load(&name, &read(path), &CheckOptions::default()) {
            Ok(_) => return Err(format!("{name} was accepted")),
            Err(d) => ensure(d.code.as_str() == expected, || {
                format!("{name}: expected {expected}, got {}", d.render(&name))
            })?,
        }
        codes.insert(expected.clone());
    }
    for needed in [
        "E0204", "E0205", "E0208", "E0210", "E0211", "E0301", "E0201",
    ] {
        ensure(codes.contains(needed), || {
            format!("no fixture for {needed}")
        })?;
    }
    Ok(format!(
        "{} fixtures rejected with their expected codes",
        fixtures.len()
    ))
}

// Random pattern rows, shared by the identity and typed-pats criteria.

struct Row {
    file: usize,
    tele: Telescope,
    patterns: Vec<Pattern>,
}

fn gen_pattern(sig: &Signature, ty: &Term, depth: usize, rng: &mut StdRng) -> Pattern {
    if let Term::DataCall(d, _) = ty {
        let data = sig.data(d).unwrap();
        if depth > 0 && !data.ctors.is_empty() && rng.gen_bool(0.65) {
            let row = data.ctors.choose(rng).unwrap();
            let args = row
                .fields
                .iter()
                .map(|f| gen_pattern(sig, &f.ty, depth - 1, rng))
                .collect();
            return Pattern::Con(row.name.clone(), args);
        }
    }
    Pattern::Bind(Var::fresh("p"), None)
}

/// Telescopes of every data type and function, per corpus file.
fn telescopes(files: &[(String, Loaded)]) -> Vec<(usize, Telescope)> {
    let mut out = Vec::new();
    for (i, (_, l)) in files.iter().enumerate() {
        let sig = &l.program.signature;
        for d in sig.data_types() {
            if !d.telescope.is_empty() {
                out.push((i, d.telescope.clone()));
            }
        }
        for f in sig.functions() {
            if !f.telescope.is_empty() {
                out.push((i, f.telescope.clone()));
            }
        }
    }
    out
}

fn random_rows(files: &[(String, Loaded)], n: usize) -> Result<Vec<Row>, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let teles = telescopes(files);
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < n {
        attempts += 1;
        ensure(attempts < n * 200, || {
            format!("only {} rows accepted", rows.len())
        })?;
        let (file, tele) = teles.choose(&mut rng).unwrap();
        let sig = &files[*file].1.program.signature;
        let mut patterns: Vec<Pattern> = tele
            .iter()
            .map(|b| gen_pattern(sig, &b.ty, 3, &mut rng))
            .collect();
        let ck = Checker::new(sig, EvalOptions::default());
        if ck
            .check_patterns(&Telescope::new(), &mut patterns, tele)
            .is_ok()
        {
            rows.push(Row {
                file: *file,
                tele: tele.clone(),
                patterns,
            });
        }
    }
    Ok(rows)
}

fn ac3_identity(rows: &[Row]) -> Outcome {
    let mut with_con = 0;
    for row in rows {
        let us: Vec<Term> = row.patterns.iter().map(pattern_term).collect();
        let mut vars = Vec::new();
        row.patterns.iter().for_each(|p| pattern_vars(p, &mut vars));
        if row.patterns.iter().any(|p| matches!(p, Pattern::Con(..))) {
            with_con += 1;
        }
        match match_terms(&us, &row.patterns).map_err(|e| e.to_string())? {
            MatchOutcome::Matched(sigma) => {
                let domain: HashSet<Var> = sigma.domain().into_iter().collect();
                ensure(domain == vars.iter().cloned().collect(), || {
                    format!("domain mismatch for {:?}", row.patterns)
                })?;
                for x in &vars {
                    let image = Term::var(x).subst(&sigma);
                    ensure(image == Term::var(x), || format!("{x} maps to {image}"))?;
                }
            }
            other => return Err(format!("{:?} gave {other:?}", row.patterns)),
        }
    }
    Ok(format!(
        "{} random checked rows ({with_con} with constructor patterns) match their own terms by identity",
        rows.len()
    ))
}

/// The bindings of a checked row, in order, with their filled-in types.
fn row_context(ps: &[Pattern]) -> Telescope {
    fn go(p: &Pattern, out: &mut Telescope) {
        match p {
            Pattern::Bind(x, ty) => out.push(x.clone(), ty.clone().expect("checked binding")),
            Pattern::Con(_, qs) => qs.iter().for_each(|q| go(q, out)),
            Pattern::Impossible => {}
        }
    }
    let mut out = Telescope::new();
    ps.iter().for_each(|p| go(p, &mut out));
    out
}

fn ac4_typed_pats(files: &[(String, Loaded)], rows: &[Row]) -> Outcome {
    let mut checked = 0;
    let mut verify = |sig: &Signature, ps: &[Pattern], tele: &Telescope| -> Result<(), String> {
        let ctx = row_context(ps);
        let us: Vec<Term> = ps.iter().map(pattern_term).collect();
        check_args(sig, &ctx, &us, tele).map_err(|e| {
            format!(
                "check_args failed for row {:?}: {e}",
                sit_core::syntax::PatternDisplay(ps).to_string()
            )
        })?;
        checked += 1;
        Ok(())
    };
    let mut corpus_rows = 0;
    for (_, l) in files {
        let sig = &l.program.signature;
        for d in sig.data_types() {
            for r in &d.ctors {
                if let Some(ps) = &r.patterns {
                    verify(sig, ps, &d.telescope)?;
                    corpus_rows += 1;
                }
            }
        }
        for f in sig.functions() {
            for c in f.clauses.iter().filter(|c| !c.has_impossible()) {
                verify(sig, &c.patterns, &f.telescope)?;
                corpus_rows += 1;
            }
        }
    }
    for row in rows {
        verify(
            &files[row.file].1.program.signature,
            &row.patterns,
            &row.tele,
        )?;
    }
    Ok(format!(
        "{checked} rows ({corpus_rows} from the corpus, {} random) instantiate their telescopes",
        rows.len()
    ))
}

fn class(m: &MatchOutcome) -> &'static str {
    match m {
        MatchOutcome::Matched(_) => "matched",
        MatchOutcome::Mismatch => "mismatch",
        MatchOutcome::Stuck(_) => "stuck",
    }
}

fn oracle_class(u: &Unified) -> &'static str {
    match u {
        Unified::Solved(_) => "matched",
        Unified::Clash => "mismatch",
        Unified::Stuck => "stuck",
    }
}

/// Every way of replacing one constructor subterm of `us` by a variable.
fn one_hole_variants(us: &[Term]) -> Vec<Vec<Term>> {
    fn holes(t: &Term, out: &mut Vec<Term>) {
        if let Term::ConCall(c, args) = t {
            out.push(Term::var(&Var::fresh("k")));
            for (i, a) in args.iter().enumerate() {
                let mut sub = Vec::new();
                holes(a, &mut sub);
                for s in sub {
                    let mut args = args.clone();
                    args[i] = s;
                    out.push(Term::ConCall(c.clone(), args));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, u) in us.iter().enumerate() {
        let mut alts = Vec::new();
        holes(u, &mut alts);
        for a in alts {
            let mut v = us.to_vec();
            v[i] = a;
            out.push(v);
        }
    }
    out
}

fn ac5_soundness(files: &[(String, Loaded)]) -> Outcome {
    let start = Instant::now();
    let mut compared = 0usize;
    let mut open_compared = 0usize;
    let mut seen_classes = HashSet::new();
    let mut seen_data = HashSet::new();
    for (name, l) in files {
        let sig = &l.program.signature;
        let en = Enumerator::new(sig, 400);
        for d in sig.data_types() {
            if d.telescope.is_empty() || !seen_data.insert(d.name.to_string()) {
                continue;
            }
            let tuples = en.tuples(&d.telescope, 3, usize::MAX);
            for us in &tuples {
                let mut candidates = vec![us.clone()];
                candidates.extend(one_hole_variants(us));
                for (k, cand) in candidates.iter().enumerate() {
                    for row in &d.ctors {
                        let ps = row_patterns(d, row);
                        let mut vars = Vec::new();
                        ps.iter().for_each(|p| pattern_vars(p, &mut vars));
                        let flex: HashSet<Var> = vars.iter().cloned().collect();
                        let targets: Vec<Term> = ps.iter().map(pattern_term).collect();
                        let m = match_terms(cand, &ps).map_err(|e| e.to_string())?;
                        let o = unify(cand, &targets, &flex);
                        ensure(class(&m) == oracle_class(&o), || {
                            format!(
                                "{name}: {} at {:?}: matcher says {}, unifier says {}",
                                row.name,
                                cand.iter().map(Term::to_string).collect::<Vec<_>>(),
                                class(&m),
                                oracle_class(&o)
                            )
                        })?;
                        if let (MatchOutcome::Matched(sigma), Unified::Solved(sol)) = (&m, &o) {
                            for x in &vars {
                                let a = Term::var(x).subst(sigma);
                                ensure(a.alpha_eq(&sol[x]), || {
                                    format!(
                                        "{name}: {} binds {x} to {a}, unifier to {}",
                                        row.name, sol[x]
                                    )
                                })?;
                            }
                        }
                        seen_classes.insert((k > 0, class(&m)));
                        if k == 0 {
                            compared += 1;
                        } else {
                            open_compared += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    for c in [(false, "matched"), (false, "mismatch"), (true, "stuck")] {
        ensure(seen_classes.contains(&c), || {
            format!("outcome {c:?} never exercised")
        })?;
    }
    Ok(format!(
        "{compared} closed and {open_compared} one-variable row/index comparisons agree with unification ({} data types, {elapsed:?})",
        seen_data.len()
    ))
}

fn ac6_translation(files: &[(String, Loaded)]) -> Outcome {
    let mut count = 0;
    for (name, l) in files {
        let sig = &l.program.signature;
        for d in sig.data_types() {
            let g = to_general(d).map_err(|e| format!("{name}: {}: {e}", d.name))?;
            ensure(g.ctors.len() == d.ctors.len(), || {
                format!("{}: lost constructors", d.name)
            })?;
            for (c, ty) in &g.ctors {
                check_term(sig, &Telescope::new(), ty, &Term::Univ)
                    .map_err(|e| format!("{name}: {c} : {ty} does not check: {e}"))?;
                let mut ctx = Telescope::new();
                let mut cod = ty.clone();
                while let Term::Pi(x, dom, rest) = cod {
                    ctx.push(x, *dom);
                    cod = *rest;
                }
                let Term::DataCall(target, idx) = &cod else {
                    return Err(format!("{c} : {ty} does not end in a data type"));
                };
                ensure(target == &d.name, || format!("{c} targets {target}"))?;
                check_args(sig, &ctx, idx, &d.telescope)
                    .map_err(|e| format!("{name}: {c}: indices of {cod} do not check: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} translated constructor types re-check"))
}

fn ac7_evaluation() -> Outcome {
    let l = load_corpus("normalize.sit");
    let sig = &l.program.signature;
    let ev = Evaluator::new(sig, EvalOptions::default());
    let con = |c: &str, args: Vec<Term>| Term::con(c, args);
    let norm = |t: &str, x: Term| Term::func("normalize", vec![con(t, vec![]), x]);
    let eval = |t: &Term| ev.normalize(t).map_err(|e| e.to_string());

    let t1 = norm("natT", con("succ", vec![con("nat", vec![numeral(3)])]));
    let v1 = eval(&t1)?;
    ensure(v1.alpha_eq(&numeral(4)), || format!("{t1} gave {v1}"))?;
    let ty = sit_core::check::infer(sig, &Telescope::new(), &t1).map_err(|e| e.to_string())?;
    ensure(
        ev.convertible(&ty, &Term::data("Nat", vec![])).unwrap(),
        || format!("{t1} has type {ty}"),
    )?;

    let t2 = norm(
        "boolT",
        con("inv", vec![con("bool", vec![con("true", vec![])])]),
    );
    let v2 = eval(&t2)?;
    ensure(v2.alpha_eq(&con("false", vec![])), || {
        format!("{t2} gave {v2}")
    })?;

    // With x and y left abstract the result is x's normal form, which is
    // the stuck call on x.
    let (x, y) = (Var::fresh("x"), Var::fresh("y"));
    let tru = con("bool", vec![con("true", vec![])]);
    let t3 = norm(
        "natT",
        con("case", vec![tru.clone(), Term::var(&x), Term::var(&y)]),
    );
    let v3 = eval(&t3)?;
    let expect3 = norm("natT", Term::var(&x));
    ensure(v3.alpha_eq(&expect3), || format!("{t3} gave {v3}"))?;

    let xv = con("succ", vec![con("nat", vec![numeral(1)])]);
    let t4 = norm(
        "natT",
        con("case", vec![tru.clone(), xv, con("nat", vec![numeral(0)])]),
    );
    let v4 = eval(&t4)?;
    ensure(v4.alpha_eq(&numeral(2)), || format!("{t4} gave {v4}"))?;

    let t5 = norm(
        "boolT",
        con(
            "case",
            vec![
                tru,
                con("bool", vec![con("false", vec![])]),
                con("bool", vec![con("true", vec![])]),
            ],
        ),
    );
    let v5 = eval(&t5)?;
    ensure(v5.alpha_eq(&con("false", vec![])), || {
        format!("{t5} gave {v5}")
    })?;

    Ok(format!(
        "{v1}; {v2}; {v3}; case with concrete branches gives {v4} and {v5}"
    ))
}

fn ac8_coverage(files: &[(String, Loaded)]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut total = 0;
    let mut functions = 0;
    let mut short = Vec::new();
    for (name, l) in files {
        let sig = &l.program.signature;
        let en = Enumerator::new(sig, 300);
        let ev = Evaluator::new(sig, EvalOptions::default());
        for f in sig.functions() {
            let tuples = en.sample_tuples(&f.telescope, 4, 500, &mut rng);
            for args in &tuples {
                match ev.dispatch(f, args).map_err(|e| e.to_string())? {
                    Dispatch::Clause { .. } => {}
                    other => {
                        return Err(format!(
                            "{name}: {} on {:?} gave {other:?}",
                            f.name,
                            args.iter().map(Term::to_string).collect::<Vec<_>>()
                        ))
                    }
                }
            }
            if tuples.len() < 500 {
                short.push(format!("{}={}", f.name, tuples.len()));
            }
            total += tuples.len();
            functions += 1;
        }
    }
    let path = corpus_dir().join("negative/plus_missing_case.sit");
    let err = load("plus.sit", &read(&path), &CheckOptions::default())
        .err()
        .ok_or("the one-clause plus was accepted")?;
    ensure(err.code.as_str() == "E0301", || {
        format!("plus fixture gave {}", err.render("plus.sit"))
    })?;
    ensure(err.message.contains("suc _, _"), || {
        format!("message was {:?}", err.message)
    })?;
    Ok(format!(
        "{total} closed tuples over {functions} functions all dispatch (exhaustive where fewer than 500 exist: {}); plus flagged missing `suc _, _`",
        short.join(", ")
    ))
}

// Match stability under substitution.

const CTORS: &[(&str, usize)] = &[("zero", 0), ("suc", 1), ("nil", 0), ("cons", 2)];

fn gen_term(pool: &[Var], depth: usize, rng: &mut StdRng) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        if rng.gen_bool(0.5) {
            return Term::var(pool.choose(rng).unwrap());
        }
        let c = ["zero", "nil"].choose(rng).unwrap();
        return Term::con(c, vec![]);
    }
    let (c, n) = CTORS.choose(rng).unwrap();
    Term::con(c, (0..*n).map(|_| gen_term(pool, depth - 1, rng)).collect())
}

fn gen_pat(depth: usize, rng: &mut StdRng) -> Pattern {
    if depth == 0 || rng.gen_bool(0.35) {
        return Pattern::Bind(Var::fresh("p"), None);
    }
    let (c, n) = CTORS.choose(rng).unwrap();
    Pattern::Con(
        (*c).into(),
        (0..*n).map(|_| gen_pat(depth - 1, rng)).collect(),
    )
}

/// A term that the pattern matches, with bindings drawn at random.
fn instance(p: &Pattern, pool: &[Var], rng: &mut StdRng) -> Term {
    match p {
        Pattern::Bind(..) => gen_term(pool, 2, rng),
        Pattern::Con(c, ps) => Term::ConCall(
            c.clone(),
            ps.iter().map(|q| instance(q, pool, rng)).collect(),
        ),
        Pattern::Impossible => unreachable!(),
    }
}

fn ac9_stability() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let pool: Vec<Var> = ["a", "b", "c"].iter().map(|n| Var::fresh(n)).collect();
    let (mut matched, mut mismatched, mut stuck) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let ps: Vec<Pattern> = (0..n).map(|_| gen_pat(3, &mut rng)).collect();
        let us: Vec<Term> = ps
            .iter()
            .map(|p| {
                if rng.gen_bool(0.6) {
                    instance(p, &pool, &mut rng)
                } else {
                    gen_term(&pool, 3, &mut rng)
                }
            })
            .collect();
        let mut pairs = Vec::new();
        for x in &pool {
            if rng.gen_bool(0.7) {
                pairs.push((x.clone(), gen_term(&pool, 2, &mut rng)));
            }
        }
        let tau = Substitution::from_pairs(pairs);
        let before = match_terms(&us, &ps).map_err(|e| e.to_string())?;
        let moved: Vec<Term> = us.iter().map(|u| u.subst(&tau)).collect();
        let after = match_terms(&moved, &ps).map_err(|e| e.to_string())?;
        let describe = || {
            format!(
                "{} against {} under {:?}",
                us.iter()
                    .map(Term::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                sit_core::syntax::PatternDisplay(&ps),
                tau
            )
        };
        match (&before, &after) {
            (MatchOutcome::Matched(sigma), MatchOutcome::Matched(sigma2)) => {
                matched += 1;
                let composed = sigma.compose(&tau);
                let mut vars = Vec::new();
                ps.iter().for_each(|p| pattern_vars(p, &mut vars));
                ensure(sigma2.len() == vars.len(), describe)?;
                for x in &vars {
                    let want = Term::var(x).subst(&composed);
                    let got = Term::var(x).subst(sigma2);
                    ensure(got.alpha_eq(&want), || {
                        format!("{}: {x} is {got}, expected {want}", describe())
                    })?;
                }
            }
            (MatchOutcome::Matched(_), _) => return Err(format!("match lost: {}", describe())),
            (MatchOutcome::Mismatch, MatchOutcome::Mismatch) => mismatched += 1,
            (MatchOutcome::Mismatch, _) => return Err(format!("mismatch lost: {}", describe())),
            (MatchOutcome::Stuck(_), _) => stuck += 1,
        }
    }
    ensure(matched >= 100 && mismatched >= 100, || {
        format!("generator too skewed: {matched} matched, {mismatched} mismatched")
    })?;
    Ok(format!(
        "1000 triples: {matched} matched and {mismatched} mismatched stay stable ({stuck} stuck)"
    ))
}

fn main() {
    let files = corpus();
    let rows = random_rows(&files, 1000);
    let criteria: Vec<Criterion<'_>> = vec![
        ("AC1", "corpus acceptance", Box::new(ac1_corpus)),
        ("AC2", "negative suite", Box::new(ac2_negative)),
        (
            "AC3",
            "pattern rows match their own terms by identity",
            Box::new(|| {
                rows.as_ref()
                    .map_err(Clone::clone)
                    .and_then(|r| ac3_identity(r))
            }),
        ),
        (
            "AC4",
            "typed-pats",
            Box::new(|| {
                rows.as_ref()
                    .map_err(Clone::clone)
                    .and_then(|r| ac4_typed_pats(&files, r))
            }),
        ),
        (
            "AC5",
            "availability agrees with unification",
            Box::new(|| ac5_soundness(&files)),
        ),
        (
            "AC6",
            "translated constructor types are well-typed",
            Box::new(|| ac6_translation(&files)),
        ),
        ("AC7", "evaluation of normalize", Box::new(ac7_evaluation)),
        ("AC8", "coverage fuzz", Box::new(|| ac8_coverage(&files))),
        (
            "AC9",
            "match stability under substitution",
            Box::new(ac9_stability),
        ),
    ];
    let mut failed = 0;
    for (id, title, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
