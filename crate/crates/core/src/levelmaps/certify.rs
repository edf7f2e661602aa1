use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{Condition, LevelMapping};
use crate::interp::{model_violation, PartialInterpretation, TruthValue};
use crate::syntax::{AtomId, AtomSet, GroundClause, GroundProgram};
use crate::{Error, Result};

/// A failed condition at one atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Label of the violated case, e.g. `Fi` or `WSii`.
    pub condition: &'static str,
    /// The offending clause, for the universally quantified cases.
    pub clause: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomStatus {
    Ok,
    Violated(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub condition: Condition,
    pub passed: bool,
    /// Whether the interpretation is a model; `None` for local
    /// stratification, which ignores the interpretation.
    pub model: Option<bool>,
    pub model_violation: Option<String>,
    pub per_atom: BTreeMap<AtomId, AtomStatus>,
}

impl CertReport {
    pub fn violations(&self) -> impl Iterator<Item = (AtomId, &Violation)> + '_ {
        self.per_atom.iter().filter_map(|(&a, s)| match s {
            AtomStatus::Ok => None,
            AtomStatus::Violated(v) => Some((a, v)),
        })
    }

    pub fn to_json(&self, g: &GroundProgram) -> Value {
        let violations: Vec<Value> = self
            .violations()
            .map(|(a, v)| json!({ "atom": g.name(a), "condition": v.condition, "clause": v.clause }))
            .collect();
        let per_atom: serde_json::Map<String, Value> = self
            .per_atom
            .iter()
            .map(|(&a, s)| {
                let s = if matches!(s, AtomStatus::Ok) { "ok" } else { "violation" };
                (g.name(a).to_string(), json!(s))
            })
            .collect();
        json!({
            "condition": self.condition.to_string(),
            "passed": self.passed,
            "model": self.model,
            "model_violation": self.model_violation,
            "per_atom": per_atom,
            "violations": violations,
        })
    }

    pub fn render(&self, g: &GroundProgram) -> String {
        let mut out = vec![if self.passed { "PASSED".to_string() } else { "FAILED".to_string() }];
        if let Some(c) = &self.model_violation {
            out.push(format!("not a model: {c}"));
        }
        for (a, v) in self.violations() {
            match &v.clause {
                Some(c) => out.push(format!("{}: ({}) fails for {c}", g.name(a), v.condition)),
                None => out.push(format!("{}: ({}) fails", g.name(a), v.condition)),
            }
        }
        out.join("\n")
    }
}

/// Checks `c` for `g` with respect to `i` and `l`.
///
/// The partial conditions (F, WF, WS) need `dom(l)` to be exactly the atoms
/// defined in `i`. DEF, STABLE and SFI need a total `i`; DEF, STABLE and
/// LOCSTRAT need levels on the whole base. Modelhood is reported separately
/// and is required for `passed`, except under LOCSTRAT.
pub fn certify(
    g: &GroundProgram,
    i: &PartialInterpretation,
    l: &LevelMapping,
    c: Condition,
) -> Result<CertReport> {
    check_preconditions(g, i, l, c)?;
    let lv = |a: AtomId| l.get(a);
    let per_atom: BTreeMap<AtomId, AtomStatus> = checked_domain(g, i, c)
        .into_iter()
        .map(|a| {
            let status = match atom_failure(g, i, &lv, c, a) {
                None => AtomStatus::Ok,
                Some((label, clause)) => AtomStatus::Violated(Violation {
                    condition: label,
                    clause: clause.map(|cl| cl.render(g.table())),
                }),
            };
            (a, status)
        })
        .collect();
    let (model, model_violation) = if c == Condition::LocStrat {
        (None, None)
    } else {
        let v = model_violation(g, i).map(|cl| cl.render(g.table()));
        (Some(v.is_none()), v)
    };
    let passed =
        model.unwrap_or(true) && per_atom.values().all(|s| matches!(s, AtomStatus::Ok));
    Ok(CertReport { condition: c, passed, model, model_violation, per_atom })
}

fn check_preconditions(
    g: &GroundProgram,
    i: &PartialInterpretation,
    l: &LevelMapping,
    c: Condition,
) -> Result<()> {
    if c == Condition::Def && !g.is_definite() {
        return Err(Error::NotDefinite);
    }
    let base = g.base();
    if !i.defined().is_subset(base) {
        return Err(Error::DomainMismatch("interpretation mentions atoms outside the base".into()));
    }
    if c.needs_total() && !i.is_total(base) {
        let missing = g.names(&i.undefined(base)).join(", ");
        return Err(Error::NotTotal(missing));
    }
    let expected = if c.needs_total_levels() { base.clone() } else { i.defined() };
    let domain = l.domain();
    if domain != expected {
        let extra = g.names(&domain.difference(&expected).copied().collect());
        let missing = g.names(&expected.difference(&domain).copied().collect());
        return Err(Error::DomainMismatch(format!(
            "level mapping domain differs: missing [{}], extra [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    Ok(())
}

/// The atoms a condition constrains.
pub(super) fn checked_domain(g: &GroundProgram, i: &PartialInterpretation, c: Condition) -> AtomSet {
    match c {
        Condition::Def | Condition::Stable => i.true_set().clone(),
        Condition::LocStrat => g.base().clone(),
        _ => i.defined(),
    }
}

/// Checks `c` without precondition checks or report building.
pub fn satisfies(g: &GroundProgram, i: &PartialInterpretation, l: &LevelMapping, c: Condition) -> bool {
    let lv = |a: AtomId| l.get(a);
    (c == Condition::LocStrat || model_violation(g, i).is_none())
        && checked_domain(g, i, c).into_iter().all(|a| atom_failure(g, i, &lv, c, a).is_none())
}

fn gt<T: Ord>(x: Option<T>, y: Option<T>) -> bool {
    matches!((x, y), (Some(x), Some(y)) if x > y)
}

fn ge<T: Ord>(x: Option<T>, y: Option<T>) -> bool {
    matches!((x, y), (Some(x), Some(y)) if x >= y)
}

/// The first failing case of `c` at `a`, with the offending clause for the
/// universally quantified cases. `lv` gives levels; atoms outside its domain
/// compare false.
pub(super) fn atom_failure<'g, T, F>(
    g: &'g GroundProgram,
    i: &PartialInterpretation,
    lv: &F,
    c: Condition,
    a: AtomId,
) -> Option<(&'static str, Option<&'g GroundClause>)>
where
    T: Ord + Copy,
    F: Fn(AtomId) -> Option<T>,
{
    let la = lv(a);
    let lit_true = |atom: AtomId, positive: bool| {
        if positive {
            i.is_true(atom)
        } else {
            i.is_false(atom)
        }
    };
    // (Fi), (WFi), (WSi): a clause whose body is true in `i` and lies
    // strictly below `a`.
    let supported = || {
        g.clauses_for(a)
            .any(|cl| cl.body.iter().all(|l| lit_true(l.atom, l.positive) && gt(la, lv(l.atom))))
    };
    let every_clause = |label: &'static str, ok: &dyn Fn(&GroundClause) -> bool| {
        g.clauses_for(a).find(|cl| !ok(cl)).map(|cl| (label, Some(cl)))
    };
    match c {
        Condition::Def | Condition::Stable => {
            if !i.is_true(a) {
                return None;
            }
            let ok = g.clauses_for(a).any(|cl| {
                cl.pos_atoms().all(|p| i.is_true(p) && gt(la, lv(p)))
                    && cl.neg_atoms().all(|n| !i.is_true(n))
            });
            (!ok).then_some((if c == Condition::Def { "DEF" } else { "STABLE" }, None))
        }
        Condition::LocStrat => every_clause("LocStrat", &|cl| {
            cl.pos_atoms().all(|p| ge(la, lv(p))) && cl.neg_atoms().all(|n| gt(la, lv(n)))
        }),
        Condition::F | Condition::Wf | Condition::Ws | Condition::Sfi => match i.value(a) {
            TruthValue::Undefined => None,
            TruthValue::True => {
                let ok = if c == Condition::Sfi {
                    g.clauses_for(a).any(|cl| {
                        cl.body.iter().all(|l| lit_true(l.atom, l.positive))
                            && cl.pos_atoms().all(|p| ge(la, lv(p)))
                            && cl.neg_atoms().all(|n| gt(la, lv(n)))
                    })
                } else {
                    supported()
                };
                let label = match c {
                    Condition::F => "Fi",
                    Condition::Wf => "WFi",
                    Condition::Ws => "WSi",
                    _ => "SFi",
                };
                (!ok).then_some((label, None))
            }
            TruthValue::False => match c {
                Condition::F => every_clause("Fii", &|cl| {
                    cl.body.iter().any(|l| lit_true(l.atom, !l.positive) && gt(la, lv(l.atom)))
                }),
                Condition::Ws => every_clause("WSii", &|cl| {
                    let a_ = cl.pos_atoms().any(|p| i.is_false(p) && gt(la, lv(p)));
                    let b_ = cl.pos_atoms().all(|p| ge(la, lv(p)))
                        && cl.neg_atoms().all(|n| gt(la, lv(n)))
                        && cl.pos_atoms().any(|p| i.is_false(p));
                    let c_ = cl.neg_atoms().any(|n| i.is_true(n) && gt(la, lv(n)));
                    a_ || b_ || c_
                }),
                _ => every_clause("WFii", &|cl| {
                    cl.pos_atoms().any(|p| i.is_false(p) && ge(la, lv(p)))
                        || cl.neg_atoms().any(|n| i.is_true(n) && gt(la, lv(n)))
                }),
            },
        },
    }
}

/// Levels as plain naturals, for building examples.
#[cfg(test)]
pub(super) fn naturals(g: &GroundProgram, pairs: &[(&str, u64)]) -> LevelMapping {
    pairs.iter().map(|&(n, v)| (g.atom(n), super::Level::finite(v))).collect()
}
