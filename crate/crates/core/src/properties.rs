//! Invariants relating the semantics to each other and to their level
//! mapping characterizations. Used by `lpsem fuzz` and the test suites.

use std::fmt;

use crate::interp::{is_model, PartialInterpretation, TwoValuedInterpretation};
use crate::levelmaps::{
    canonical_levels, certify, greatest_certified_model, Condition, LevelMapping, Semantics,
};
use crate::operators::{lfp, Operator};
use crate::random::generate_random_program;
use crate::stable::{afp, enumerate_stable, is_stable};
use crate::strata::{local_stratification, weakly_perfect, WpKind};
use crate::syntax::{ground, GroundProgram, Program};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for PropertyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.detail)
    }
}

type Check = Result<(), PropertyFailure>;

fn ensure(ok: bool, property: &'static str, detail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(PropertyFailure { property, detail: detail() })
    }
}

fn lit(g: &GroundProgram, i: &PartialInterpretation) -> String {
    i.literal_string(g.table())
}

fn certifies(
    g: &GroundProgram,
    property: &'static str,
    i: &PartialInterpretation,
    l: &LevelMapping,
    c: Condition,
) -> Check {
    match certify(g, i, l, c) {
        Ok(r) if r.passed => Ok(()),
        Ok(r) => Err(PropertyFailure { property, detail: r.render(g) }),
        Err(e) => Err(PropertyFailure { property, detail: e.to_string() }),
    }
}

/// Runs every invariant on `g`. The brute-force oracle checks run only when
/// `|base| ≤ oracle_cap`.
pub fn check_program(g: &GroundProgram, oracle_cap: usize) -> Check {
    let (fit, fit_trace) = lfp(g, Operator::Phi);
    let (wf, wf_trace) = lfp(g, Operator::Wp);
    let wp = weakly_perfect(g).map_err(|e| PropertyFailure {
        property: "weakly perfect construction",
        detail: e.to_string(),
    })?;

    for trace in [&fit_trace, &wf_trace] {
        ensure(
            trace.iterates.windows(2).all(|w| w[0].knowledge_leq(&w[1])),
            "iterates increase",
            || format!("{} iterates are not monotone", trace.operator),
        )?;
    }
    ensure(is_model(g, &fit) && is_model(g, &wf), "fixpoints are models", || {
        format!("fitting {} / well-founded {}", lit(g, &fit), lit(g, &wf))
    })?;
    ensure(fit.knowledge_leq(&wp.model) && wp.model.knowledge_leq(&wf), "M_F ⊆ M_WP ⊆ M_WF", || {
        format!("{} / {} / {}", lit(g, &fit), lit(g, &wp.model), lit(g, &wf))
    })?;
    ensure(wp.kind != WpKind::Total || wp.model.is_total(g.base()), "total kind", || {
        lit(g, &wp.model)
    })?;
    for round in &wp.rounds {
        ensure(
            round.program.clauses().iter().all(|c| !round.accumulated.is_defined(c.head)),
            "reduct drops decided heads",
            || format!("round {}", round.index),
        )?;
    }
    let alt = afp(g);
    ensure(alt.wf_model == wf, "afp = lfp(W_P)", || {
        format!("{} vs {}", lit(g, &alt.wf_model), lit(g, &wf))
    })?;

    let stable = enumerate_stable(g, usize::MAX).expect("no cap");
    for m in &stable {
        let total = m.totalize(g.base());
        ensure(wf.knowledge_leq(&total), "stable models extend M_WF", || lit(g, &total))?;
        let (i, l) = canonical_levels(g, &Semantics::Stable(m.clone())).map_err(|e| {
            PropertyFailure { property: "stable levels", detail: e.to_string() }
        })?;
        certifies(g, "stable levels certify STABLE", &i, &l, Condition::Stable)?;
    }
    for (name, model) in [("fitting", &fit), ("weakly perfect", &wp.model)] {
        if model.is_total(g.base()) {
            let m = TwoValuedInterpretation::new(model.true_set().clone());
            ensure(is_stable(g, &m), "total model is stable", || {
                format!("{name} model {}", lit(g, model))
            })?;
        }
    }

    // Canonical level mappings certify their own semantics, and the
    // conditions weaken from F over WS to WF.
    let canon = |s: Semantics| {
        canonical_levels(g, &s)
            .map_err(|e| PropertyFailure { property: "canonical levels", detail: e.to_string() })
    };
    if g.is_definite() {
        let (i, l) = canon(Semantics::Least)?;
        certifies(g, "least levels certify DEF", &i, &l, Condition::Def)?;
        ensure(
            wp.kind == WpKind::Total && wp.model == i,
            "definite weakly perfect model is the least model",
            || lit(g, &wp.model),
        )?;
    }
    let (i, l) = canon(Semantics::Fitting)?;
    certifies(g, "fitting levels certify F", &i, &l, Condition::F)?;
    certifies(g, "F implies WS", &i, &l, Condition::Ws)?;
    certifies(g, "WS implies WF", &i, &l, Condition::Wf)?;
    let (i, l) = canon(Semantics::Wf)?;
    certifies(g, "well-founded levels certify WF", &i, &l, Condition::Wf)?;
    let (i, l) = canon(Semantics::Afp)?;
    certifies(g, "afp levels certify WF", &i, &l, Condition::Wf)?;
    let (i, l) = canon(Semantics::Ws)?;
    certifies(g, "weakly perfect levels certify WS", &i, &l, Condition::Ws)?;
    certifies(g, "WS implies WF", &i, &l, Condition::Wf)?;

    let (stratified, witness) = local_stratification(g);
    if let Some(l) = witness {
        certifies(g, "stratification witness", &PartialInterpretation::empty(), &l, Condition::LocStrat)?;
    }
    if stratified {
        ensure(wf.is_total(g.base()), "stratified programs have a total well-founded model", || {
            lit(g, &wf)
        })?;
    }

    if g.base().len() <= oracle_cap {
        check_oracle(g, &fit, &wf, &wp.model, &stable)?;
    }
    Ok(())
}

/// The greatest certified models are the fixpoints, and the total models
/// certified under STABLE are exactly the stable models.
pub fn check_oracle(
    g: &GroundProgram,
    fit: &PartialInterpretation,
    wf: &PartialInterpretation,
    wp: &PartialInterpretation,
    stable: &[TwoValuedInterpretation],
) -> Check {
    let run = |c| {
        greatest_certified_model(g, c, usize::MAX)
            .map_err(|e| PropertyFailure { property: "oracle", detail: e.to_string() })
    };
    for (c, expected) in [(Condition::F, fit), (Condition::Wf, wf), (Condition::Ws, wp)] {
        let r = run(c)?;
        ensure(r.greatest.as_ref() == Some(expected), "greatest certified model", || {
            let maximal: Vec<_> = r.maximal.iter().map(|m| lit(g, m)).collect();
            format!("{c}: expected {}, maximal {}", lit(g, expected), maximal.join(" "))
        })?;
    }
    let r = run(Condition::Stable)?;
    let mut certified: Vec<_> = r.certified.iter().map(|i| i.true_set().clone()).collect();
    certified.sort();
    let expected: Vec<_> = stable.iter().map(|m| m.atoms.clone()).collect();
    ensure(certified == expected, "STABLE-certifiable iff stable", || {
        let show = |v: &[crate::syntax::AtomSet]| {
            v.iter().map(|s| format!("{:?}", g.names(s))).collect::<Vec<_>>().join(" ")
        };
        format!("certified {} vs stable {}", show(&certified), show(&expected))
    })
}

/// Parameters of the `k`-th fuzz program for `seed`.
pub fn fuzz_program(seed: u64, k: u64) -> Program {
    let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k);
    let atoms = 1 + (s % 5) as usize;
    let clauses = ((s / 5) % 7) as usize;
    let neg = [0.0, 0.3, 0.5, 0.8][((s / 35) % 4) as usize];
    generate_random_program(atoms, clauses, 3, neg, s)
}

/// The first of `n` generated programs that violates an invariant.
pub fn fuzz(n: u64, seed: u64, oracle_cap: usize) -> Option<(Program, PropertyFailure)> {
    (0..n).find_map(|k| {
        let p = fuzz_program(seed, k);
        let g = ground(&p, None).expect("propositional");
        check_program(&g, oracle_cap).err().map(|f| (p, f))
    })
}
