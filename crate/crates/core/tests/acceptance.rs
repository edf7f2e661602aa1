//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use lpsem::interp::{is_model, PartialInterpretation, TwoValuedInterpretation};
use lpsem::levelmaps::{
    canonical_levels, certify, greatest_certified_model, Condition, Level, LevelMapping, Semantics,
};
use lpsem::operators::{greatest_unfounded, least_model, lfp, Operator};
use lpsem::random::generate_random_program;
use lpsem::stable::{afp, enumerate_stable, gl, is_stable};
use lpsem::strata::{weakly_perfect, wp_reduct, RoundOutcome, WpKind};
use lpsem::syntax::{ground, AtomSet, GroundClause, GroundLiteral, GroundProgram};

const P_FIT: &str = "p :- p. q :- not r.";
const P_WF: &str = "s :- q. q :- not p. p :- p. r :- not r.";
const Q_SUB: &str = "s :- q. q :- not p. p :- p.";
const P_WS: &str = "a :- not b. b :- c, not a. b :- c, not d. c :- b, not e. d :- e. e :- d.";
const P_SFI: &str = "p :- p. q :- not p.";

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tv(g: &GroundProgram, names: &[&str]) -> TwoValuedInterpretation {
    g.atoms(names.iter().copied()).into()
}

fn naturals(g: &GroundProgram, pairs: &[(&str, u64)]) -> LevelMapping {
    pairs.iter().map(|&(n, v)| (g.atom(n), Level::finite(v))).collect()
}

fn passes(g: &GroundProgram, i: &PartialInterpretation, l: &LevelMapping, c: Condition) -> Outcome {
    let r = certify(g, i, l, c).map_err(|e| e.to_string())?;
    check!(r.passed, "{c}: {}", r.render(g));
    Ok(())
}

fn fitting_golden() -> Outcome {
    let g = program(P_FIT);
    let (_, trace) = lfp(&g, Operator::Phi);
    let expected =
        vec![lits(&g, &[]), lits(&g, &["-r"]), lits(&g, &["q", "-r"]), lits(&g, &["q", "-r"])];
    check!(trace.iterates == expected, "iterates {:?}", trace.iterates);
    Ok(())
}

fn well_founded_golden() -> Outcome {
    let g = program(P_WF);
    let (_, trace) = lfp(&g, Operator::Wp);
    let expected = [lits(&g, &["-p"]), lits(&g, &["-p", "q"]), lits(&g, &["-p", "q", "s"])];
    check!(trace.iterates[1..4] == expected, "iterates {:?}", trace.iterates);
    check!(trace.fixpoint_index == 3, "fixpoint index {}", trace.fixpoint_index);
    check!(trace.iterates[4] == trace.iterates[3], "no repeat after stage 3");
    let u = greatest_unfounded(&g, &PartialInterpretation::empty());
    check!(u == g.atoms(["p"]), "U_P(∅) = {:?}", g.names(&u));
    Ok(())
}

fn stable_afp_golden() -> Outcome {
    let q = program(Q_SUB);
    check!(enumerate_stable(&q, 20).unwrap() == vec![tv(&q, &["q", "s"])], "stable models of Q");
    let g = program(P_WF);
    check!(gl(&g, &tv(&g, &[])) == tv(&g, &["q", "s", "r"]), "GL(∅)");
    check!(gl(&g, &tv(&g, &["q", "s", "r"])) == tv(&g, &["q", "s"]), "GL({{q,s,r}})");
    check!(gl(&g, &TwoValuedInterpretation::new(g.base().clone())) == tv(&g, &[]), "GL(B_P)");
    let r = afp(&g);
    check!(r.l_fix == tv(&g, &["q", "s"]), "L_P");
    check!(r.g_fix == tv(&g, &["q", "r", "s"]), "G_P");
    check!(r.wf_model == lits(&g, &["q", "s", "-p"]), "wf model");
    check!(enumerate_stable(&g, 20).unwrap().is_empty(), "P_wf has a stable model");
    Ok(())
}

fn weakly_perfect_golden() -> Outcome {
    let g = program(P_WS);
    let r = weakly_perfect(&g).map_err(|e| e.to_string())?;
    let de = lits(&g, &["-d", "-e"]);
    match &r.rounds[0].outcome {
        RoundOutcome::Continue { model, .. } => check!(model == &de, "M_1 = {model:?}"),
        other => return Err(format!("round 1 stopped: {other:?}")),
    }
    check!(r.rounds.len() == 2, "{} rounds", r.rounds.len());
    check!(r.rounds[1].accumulated == de, "N after round 1");
    let reduced = wp_reduct(&g, &de);
    let lit = |a: &str, positive| GroundLiteral { atom: g.atom(a), positive };
    let expected = GroundProgram::from_parts(
        g.table().clone(),
        g.base().clone(),
        [
            GroundClause::new(g.atom("a"), vec![lit("b", false)]),
            GroundClause::new(g.atom("b"), vec![lit("c", true), lit("a", false)]),
            GroundClause::new(g.atom("b"), vec![lit("c", true)]),
            GroundClause::new(g.atom("c"), vec![lit("b", true)]),
        ],
    );
    check!(reduced == expected, "P/N_1 = {:?}", reduced.clause_strings());
    check!(r.kind == WpKind::Partial && r.model == de, "model {:?} {}", r.model, r.kind);
    Ok(())
}

fn comparison_golden() -> Outcome {
    let g = program(P_WS);
    let fit = lfp(&g, Operator::Phi).0;
    let wp = weakly_perfect(&g).unwrap().model;
    let wf = lfp(&g, Operator::Wp).0;
    check!(fit == PartialInterpretation::empty(), "M_F");
    check!(wp == lits(&g, &["-d", "-e"]), "M_WP");
    check!(wf == lits(&g, &["a", "-b", "-c", "-d", "-e"]), "M_WF");
    check!(fit.knowledge_leq(&wp) && wp.knowledge_leq(&wf), "containments");
    Ok(())
}

fn level_mapping_golden() -> Outcome {
    let nat = fixture("p_nat");
    let (least, _) = least_model(&nat).unwrap();
    let l: LevelMapping = nat
        .base()
        .iter()
        .map(|&a| (a, Level::finite(nat.name(a).matches("s(").count() as u64)))
        .collect();
    passes(&nat, &least.totalize(nat.base()), &l, Condition::Def)?;

    let q = program(Q_SUB);
    let l = naturals(&q, &[("q", 0), ("s", 1), ("p", 5)]);
    passes(&q, &tv(&q, &["q", "s"]).totalize(q.base()), &l, Condition::Stable)?;

    let f = program(P_FIT);
    passes(&f, &lits(&f, &["q", "-r"]), &naturals(&f, &[("r", 0), ("q", 1)]), Condition::F)?;

    let w = program(P_WF);
    let wf = lits(&w, &["q", "s", "-p"]);
    passes(&w, &wf, &naturals(&w, &[("p", 0), ("q", 1), ("s", 2)]), Condition::Wf)?;

    let (m, l) = canonical_levels(&w, &Semantics::Afp).unwrap();
    check!(l.get(w.atom("q")) == Some(Level::pair(1, 0)), "afp l(q)");
    check!(l.get(w.atom("s")) == Some(Level::pair(1, 1)), "afp l(s)");
    passes(&w, &m, &l, Condition::Wf)
}

/// Every program over `{a, b}` with at most three distinct clauses whose
/// bodies have at most two distinct literals.
fn two_atom_sweep() -> Vec<GroundProgram> {
    let base = program("#atom a. #atom b.");
    let (a, b) = (base.atom("a"), base.atom("b"));
    let literals: Vec<GroundLiteral> = [a, b]
        .iter()
        .flat_map(|&atom| [true, false].map(|positive| GroundLiteral { atom, positive }))
        .collect();
    let mut bodies: Vec<Vec<GroundLiteral>> = vec![vec![]];
    for i in 0..literals.len() {
        bodies.push(vec![literals[i]]);
        for j in i + 1..literals.len() {
            bodies.push(vec![literals[i], literals[j]]);
        }
    }
    let clauses: Vec<GroundClause> = [a, b]
        .iter()
        .flat_map(|&h| bodies.iter().map(move |body| GroundClause::new(h, body.clone())))
        .collect();
    let n = clauses.len();
    let mut programs = vec![base.with_clauses([])];
    for i in 0..n {
        programs.push(base.with_clauses([clauses[i].clone()]));
        for j in i + 1..n {
            programs.push(base.with_clauses([clauses[i].clone(), clauses[j].clone()]));
            for k in j + 1..n {
                programs.push(base.with_clauses(
                    [i, j, k].map(|x| clauses[x].clone()),
                ));
            }
        }
    }
    programs
}

fn random_corpus(count: u64, max_atoms: u64, seed: u64) -> Vec<GroundProgram> {
    (0..count)
        .map(|k| {
            let s = seed * 1_000_003 + k;
            let atoms = 1 + (s % max_atoms) as usize;
            let clauses = (s / max_atoms % 7) as usize;
            let neg = [0.2, 0.4, 0.6][(s % 3) as usize];
            ground(&generate_random_program(atoms, clauses, 3, neg, s), None).unwrap()
        })
        .collect()
}

fn oracle_corpus() -> Vec<GroundProgram> {
    let mut all = two_atom_sweep();
    assert_eq!(all.len(), 1794);
    all.extend(random_corpus(500, 4, 7));
    all
}

fn render(g: &GroundProgram) -> String {
    g.clause_strings().join(" ")
}

fn oracle_equivalence() -> Outcome {
    for g in oracle_corpus() {
        let expected = [
            (Condition::F, lfp(&g, Operator::Phi).0),
            (Condition::Wf, lfp(&g, Operator::Wp).0),
            (Condition::Ws, weakly_perfect(&g).map_err(|e| e.to_string())?.model),
        ];
        for (c, m) in expected {
            let r = greatest_certified_model(&g, c, 5).map_err(|e| e.to_string())?;
            check!(
                r.greatest.as_ref() == Some(&m),
                "{c} on `{}`: expected {}, oracle maximal {:?}",
                render(&g),
                m.literal_string(g.table()),
                r.maximal.iter().map(|x| x.literal_string(g.table())).collect::<Vec<_>>()
            );
        }
    }
    Ok(())
}

fn sfi_counterexample() -> Outcome {
    let g = program(P_SFI);
    let r = greatest_certified_model(&g, Condition::Sfi, 5).map_err(|e| e.to_string())?;
    let (x, y) = (lits(&g, &["p", "-q"]), lits(&g, &["-p", "q"]));
    check!(r.maximal.len() == 2 && r.maximal.contains(&x) && r.maximal.contains(&y), "maximal {:?}", r.maximal);
    check!(!x.knowledge_leq(&y) && !y.knowledge_leq(&x), "comparable");
    check!(r.greatest.is_none(), "greatest exists");
    Ok(())
}

fn fages_sweep() -> Outcome {
    for g in oracle_corpus() {
        let mut certified: Vec<AtomSet> = greatest_certified_model(&g, Condition::Stable, 5)
            .map_err(|e| e.to_string())?
            .certified
            .iter()
            .map(|i| i.true_set().clone())
            .collect();
        certified.sort();
        let stable: Vec<AtomSet> =
            enumerate_stable(&g, 20).unwrap().into_iter().map(|m| m.atoms).collect();
        check!(certified == stable, "`{}`: certified {certified:?}, stable {stable:?}", render(&g));
    }
    Ok(())
}

fn containment_and_totality() -> Outcome {
    for g in random_corpus(1000, 6, 11) {
        let fit = lfp(&g, Operator::Phi).0;
        let wf = lfp(&g, Operator::Wp).0;
        let wp = weakly_perfect(&g).map_err(|e| e.to_string())?;
        check!(fit.knowledge_leq(&wp.model) && wp.model.knowledge_leq(&wf), "containment on `{}`", render(&g));
        check!(afp(&g).wf_model == wf, "afp on `{}`", render(&g));
        for m in [&fit, &wp.model] {
            if m.is_total(g.base()) {
                check!(is_stable(&g, &TwoValuedInterpretation::new(m.true_set().clone())), "total model not stable on `{}`", render(&g));
            }
        }
    }
    Ok(())
}

fn definite_sweep() -> Outcome {
    for k in 0..200u64 {
        let atoms = 1 + (k % 5) as usize;
        let p = generate_random_program(atoms, (k % 8) as usize, 3, 0.0, 500 + k);
        let g = ground(&p, None).unwrap();
        let (least, _) = least_model(&g).map_err(|e| e.to_string())?;
        let base: Vec<_> = g.base().iter().copied().collect();
        for mask in 0u32..(1 << base.len()) {
            let m: TwoValuedInterpretation =
                (0..base.len()).filter(|b| mask >> b & 1 == 1).map(|b| base[b]).collect::<AtomSet>().into();
            if is_model(&g, &m.totalize(g.base())) {
                check!(least.is_subset(&m), "least model not below {:?} on `{}`", g.names(&m.atoms), render(&g));
            }
        }
        let wp = weakly_perfect(&g).map_err(|e| e.to_string())?;
        check!(wp.kind == WpKind::Total && wp.model == least.totalize(g.base()), "weakly perfect on `{}`", render(&g));
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Fitting iterates on P_fit", fitting_golden, Duration::from_secs(1)),
        ("well-founded iterates on P_wf", well_founded_golden, Duration::from_secs(1)),
        ("stable models and alternating fixed point", stable_afp_golden, Duration::from_secs(1)),
        ("weakly perfect construction on P_ws", weakly_perfect_golden, Duration::from_secs(1)),
        ("Fitting, weakly perfect, well-founded on P_ws", comparison_golden, Duration::from_secs(1)),
        ("paper level mappings certify", level_mapping_golden, Duration::from_secs(1)),
        ("greatest certified model = fixpoint semantics", oracle_equivalence, Duration::from_secs(300)),
        ("SFI has no greatest model on P_sfi", sfi_counterexample, Duration::from_secs(1)),
        ("STABLE-certifiable iff stable", fages_sweep, Duration::from_secs(300)),
        ("containments and totality on 1000 programs", containment_and_totality, Duration::from_secs(120)),
        ("definite programs", definite_sweep, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()))
            .and_then(|()| {
                let took = start.elapsed();
                if took > budget {
                    Err(format!("took {took:.2?}, budget {budget:?}"))
                } else {
                    Ok(())
                }
            });
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({took:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({took:.2?}): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
