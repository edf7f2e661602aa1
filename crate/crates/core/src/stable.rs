//! Gelfond–Lifschitz reduct, stable models and the alternating fixed point.

use serde_json::{json, Value};

use crate::interp::{PartialInterpretation, TwoValuedInterpretation};
use crate::operators::least_model_unchecked;
use crate::syntax::{AtomSet, GroundClause, GroundLiteral, GroundProgram};
use crate::{Error, Result};

/// Default bound on `|base|` for [`enumerate_stable`].
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// `P/M`: drop clauses with a negated atom in `m`, strip the remaining
/// negative literals.
pub fn gl_reduct(g: &GroundProgram, m: &TwoValuedInterpretation) -> GroundProgram {
    g.with_clauses(g.clauses().iter().filter(|c| c.neg_atoms().all(|b| !m.contains(b))).map(|c| {
        GroundClause::new(
            c.head,
            c.body.iter().copied().filter(|l: &GroundLiteral| l.positive).collect(),
        )
    }))
}

/// `GL_P(M)`, the least model of `P/M`.
pub fn gl(g: &GroundProgram, m: &TwoValuedInterpretation) -> TwoValuedInterpretation {
    least_model_unchecked(&gl_reduct(g, m)).into()
}

pub fn is_stable(g: &GroundProgram, m: &TwoValuedInterpretation) -> bool {
    &gl(g, m) == m
}

/// All stable models in sorted order, by checking every subset of the
/// atoms that head some clause.
pub fn enumerate_stable(g: &GroundProgram, cap: usize) -> Result<Vec<TwoValuedInterpretation>> {
    if g.base().len() > cap {
        return Err(Error::CapExceeded { cap, size: g.base().len() });
    }
    let heads: Vec<_> = g.head_atoms().into_iter().collect();
    let mut models = Vec::new();
    for mask in 0u64..(1u64 << heads.len()) {
        let m: TwoValuedInterpretation = (0..heads.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| heads[k])
            .collect::<AtomSet>()
            .into();
        if is_stable(g, &m) {
            models.push(m);
        }
    }
    models.sort();
    Ok(models)
}

pub fn stable_models_json(g: &GroundProgram, models: &[TwoValuedInterpretation]) -> Value {
    let mut lists: Vec<Vec<String>> = models.iter().map(|m| g.names(&m.atoms)).collect();
    lists.sort();
    json!({ "stable_models": lists })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfpResult {
    /// `L_0 = ∅, L_1, ...` up to the fixed point.
    pub l_sequence: Vec<TwoValuedInterpretation>,
    /// `G_0 = B_P, G_1, ...` up to the fixed point.
    pub g_sequence: Vec<TwoValuedInterpretation>,
    pub l_fix: TwoValuedInterpretation,
    pub g_fix: TwoValuedInterpretation,
    pub wf_model: PartialInterpretation,
}

impl AfpResult {
    pub fn to_json(&self, g: &GroundProgram) -> Value {
        let seq = |s: &[TwoValuedInterpretation]| -> Vec<Vec<String>> {
            s.iter().map(|m| g.names(&m.atoms)).collect()
        };
        json!({
            "l_sequence": seq(&self.l_sequence),
            "g_sequence": seq(&self.g_sequence),
            "l_fix": g.names(&self.l_fix.atoms),
            "g_fix": g.names(&self.g_fix.atoms),
            "wf_model": self.wf_model.to_json(g.table(), g.base()),
        })
    }
}

/// Alternating fixed point: `L_{k+1} = GL(G_k)`, `G_{k+1} = GL(L_k)` from
/// `L_0 = ∅`, `G_0 = B_P`, until both sequences repeat.
pub fn afp(g: &GroundProgram) -> AfpResult {
    let mut ls = vec![TwoValuedInterpretation::default()];
    let mut gs = vec![TwoValuedInterpretation::new(g.base().clone())];
    loop {
        let (l, u) = (ls.last().unwrap(), gs.last().unwrap());
        let next_l = gl(g, u);
        let next_g = gl(g, l);
        let done = &next_l == l && &next_g == u;
        ls.push(next_l);
        gs.push(next_g);
        if done {
            break;
        }
    }
    ls.pop();
    gs.pop();
    let l_fix = ls.last().unwrap().clone();
    let g_fix = gs.last().unwrap().clone();
    let wf_model = PartialInterpretation::new(
        l_fix.atoms.clone(),
        g.base().difference(&g_fix.atoms).copied().collect(),
    )
    .expect("L_P ⊆ G_P");
    AfpResult { l_sequence: ls, g_sequence: gs, l_fix, g_fix, wf_model }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{lfp, Operator};

    const Q_SUB: &str = "s :- q. q :- not p. p :- p.";
    const P_WF: &str = "s :- q. q :- not p. p :- p. r :- not r.";

    fn tv(g: &GroundProgram, names: &[&str]) -> TwoValuedInterpretation {
        g.atoms(names.iter().copied()).into()
    }

    #[test]
    fn reduct_examples() {
        let q = GroundProgram::parse(Q_SUB).unwrap();
        let r = gl_reduct(&q, &tv(&q, &["q", "s"]));
        assert_eq!(r.clause_strings(), ["p :- p.", "q.", "s :- q."]);
        assert_eq!(r.base(), q.base());

        let w = GroundProgram::parse(P_WF).unwrap();
        let all = gl_reduct(&w, &TwoValuedInterpretation::new(w.base().clone()));
        assert_eq!(all.clause_strings(), ["p :- p.", "s :- q."]);
        let none = gl_reduct(&w, &TwoValuedInterpretation::default());
        assert_eq!(none.clause_strings(), ["p :- p.", "q.", "r.", "s :- q."]);
    }

    #[test]
    fn gl_examples() {
        let w = GroundProgram::parse(P_WF).unwrap();
        assert_eq!(gl(&w, &TwoValuedInterpretation::default()), tv(&w, &["q", "r", "s"]));
        assert_eq!(gl(&w, &tv(&w, &["q", "s", "r"])), tv(&w, &["q", "s"]));
        assert_eq!(gl(&w, &TwoValuedInterpretation::new(w.base().clone())), tv(&w, &[]));
    }

    #[test]
    fn stable_enumeration() {
        let q = GroundProgram::parse(Q_SUB).unwrap();
        assert_eq!(enumerate_stable(&q, 20).unwrap(), vec![tv(&q, &["q", "s"])]);
        let w = GroundProgram::parse(P_WF).unwrap();
        assert!(enumerate_stable(&w, 20).unwrap().is_empty());
        let d = GroundProgram::parse("a. b :- a. c :- d.").unwrap();
        assert_eq!(enumerate_stable(&d, 20).unwrap(), vec![tv(&d, &["a", "b"])]);
        assert!(matches!(enumerate_stable(&w, 3), Err(Error::CapExceeded { cap: 3, size: 4 })));
    }

    /// Every subset of the base, not just head subsets.
    #[test]
    fn head_pruning_loses_nothing() {
        let g = GroundProgram::parse("a :- not b. b :- not a. c :- a, not d. #atom e.").unwrap();
        let base: Vec<_> = g.base().iter().copied().collect();
        let mut all = Vec::new();
        for mask in 0u32..(1 << base.len()) {
            let m: TwoValuedInterpretation = (0..base.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| base[k])
                .collect::<AtomSet>()
                .into();
            if is_stable(&g, &m) {
                all.push(m);
            }
        }
        all.sort();
        assert_eq!(enumerate_stable(&g, 20).unwrap(), all);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn afp_examples() {
        let w = GroundProgram::parse(P_WF).unwrap();
        let r = afp(&w);
        assert_eq!(r.l_fix, tv(&w, &["q", "s"]));
        assert_eq!(r.g_fix, tv(&w, &["q", "r", "s"]));
        assert_eq!(r.wf_model, lfp(&w, Operator::Wp).0);
        assert_eq!(r.l_sequence[0], TwoValuedInterpretation::default());
        assert_eq!(&r.g_sequence[0].atoms, w.base());

        let e = GroundProgram::parse("").unwrap();
        let r = afp(&e);
        assert_eq!(r.wf_model, PartialInterpretation::empty());

        let ws = GroundProgram::parse(
            "a :- not b. b :- c, not a. b :- c, not d. c :- b, not e. d :- e. e :- d.",
        )
        .unwrap();
        let r = afp(&ws);
        assert_eq!(r.wf_model.true_set(), &ws.atoms(["a"]));
        assert_eq!(r.wf_model.false_set(), &ws.atoms(["b", "c", "d", "e"]));
    }

    #[test]
    fn afp_sequences_are_nested() {
        let w = GroundProgram::parse(P_WF).unwrap();
        let r = afp(&w);
        for a in 0..r.l_sequence.len() {
            for b in a..r.l_sequence.len() {
                assert!(r.l_sequence[a].is_subset(&r.l_sequence[b]));
                assert!(r.l_sequence[b].is_subset(&r.g_sequence[b]));
                assert!(r.g_sequence[b].is_subset(&r.g_sequence[a]));
            }
        }
    }
}
