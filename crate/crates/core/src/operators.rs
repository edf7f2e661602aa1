//! Immediate-consequence style operators and their least fixed points.

use std::fmt;

use serde_json::{json, Value};

use crate::interp::{PartialInterpretation, TruthValue, TwoValuedInterpretation};
use crate::syntax::{AtomSet, GroundProgram};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// `T_P ∪ ¬F_P`, whose least fixed point is the Fitting model.
    Phi,
    /// `T_P ∪ ¬U_P`, whose least fixed point is the well-founded model.
    Wp,
    /// Two-valued consequence operator of a definite program.
    TpPlus,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Phi => "phi",
            Operator::Wp => "wp",
            Operator::TpPlus => "tp_plus",
        })
    }
}

/// Iterates `F↑0 = ∅, F↑1, ...` up to and including the first repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticsTrace {
    pub operator: Operator,
    pub iterates: Vec<PartialInterpretation>,
    /// First index `n` with `iterates[n] == iterates[n + 1]`.
    pub fixpoint_index: usize,
}

impl SemanticsTrace {
    pub fn fixpoint(&self) -> &PartialInterpretation {
        &self.iterates[self.fixpoint_index]
    }

    /// Least `α` such that `atom` is defined in `F↑(α+1)`.
    pub fn stage_of(&self, atom: crate::syntax::AtomId) -> Option<usize> {
        self.iterates.iter().skip(1).position(|i| i.is_defined(atom))
    }

    pub fn to_json(&self, g: &GroundProgram) -> Value {
        json!({
            "operator": self.operator.to_string(),
            "iterates": self
                .iterates
                .iter()
                .map(|i| i.to_json(g.table(), g.base()))
                .collect::<Vec<_>>(),
            "fixpoint_index": self.fixpoint_index,
        })
    }
}

/// Heads of clauses whose body is true in `i`.
pub fn tp(g: &GroundProgram, i: &PartialInterpretation) -> AtomSet {
    g.clauses()
        .iter()
        .filter(|c| i.body_value(&c.body) == TruthValue::True)
        .map(|c| c.head)
        .collect()
}

/// Base atoms all of whose clauses have a false body; atoms without clauses
/// qualify vacuously.
pub fn fp_op(g: &GroundProgram, i: &PartialInterpretation) -> AtomSet {
    g.base()
        .iter()
        .copied()
        .filter(|&a| g.clauses_for(a).all(|c| i.body_value(&c.body) == TruthValue::False))
        .collect()
}

pub fn phi(g: &GroundProgram, i: &PartialInterpretation) -> PartialInterpretation {
    PartialInterpretation::new(tp(g, i), fp_op(g, i))
        .expect("T_P and F_P are disjoint on consistent interpretations")
}

/// Greatest unfounded set with respect to `i`.
///
/// Starts from the whole base and repeatedly drops atoms having a clause
/// with no false literal and no positive body atom left in the candidate set.
pub fn greatest_unfounded(g: &GroundProgram, i: &PartialInterpretation) -> AtomSet {
    let mut unfounded = g.base().clone();
    loop {
        let supported: Vec<_> = unfounded
            .iter()
            .copied()
            .filter(|&a| {
                g.clauses_for(a).any(|c| {
                    let some_false = c.body.iter().any(|&l| i.literal_value(l) == TruthValue::False);
                    let loops = c.pos_atoms().any(|b| unfounded.contains(&b));
                    !some_false && !loops
                })
            })
            .collect();
        if supported.is_empty() {
            return unfounded;
        }
        for a in supported {
            unfounded.remove(&a);
        }
    }
}

pub fn wp(g: &GroundProgram, i: &PartialInterpretation) -> PartialInterpretation {
    PartialInterpretation::new(tp(g, i), greatest_unfounded(g, i))
        .expect("T_P and U_P are disjoint along the W_P iteration")
}

/// Least fixed point of `Φ_P` or `W_P` by iteration from the empty
/// interpretation. [`Operator::TpPlus`] is accepted and yields the least
/// model of the definite part of `g`, as a partial interpretation with an
/// empty false part.
pub fn lfp(g: &GroundProgram, which: Operator) -> (PartialInterpretation, SemanticsTrace) {
    let step = |i: &PartialInterpretation| match which {
        Operator::Phi => phi(g, i),
        Operator::Wp => wp(g, i),
        Operator::TpPlus => {
            PartialInterpretation::new(positive_consequences(g, i.true_set()), AtomSet::new())
                .expect("no false atoms")
        }
    };
    let mut iterates = vec![PartialInterpretation::empty()];
    loop {
        let next = step(iterates.last().unwrap());
        let done = &next == iterates.last().unwrap();
        iterates.push(next);
        if done {
            break;
        }
        debug_assert!(iterates.len() <= g.base().len() + 2, "iteration failed to converge");
    }
    let fixpoint_index = iterates.len() - 2;
    let model = iterates[fixpoint_index].clone();
    (model, SemanticsTrace { operator: which, iterates, fixpoint_index })
}

/// `T_P(m ∪ ¬(B_P ∖ m))` restricted to the positive body literals. Negative
/// literals are ignored; callers guarantee definiteness.
fn positive_consequences(g: &GroundProgram, m: &AtomSet) -> AtomSet {
    g.clauses()
        .iter()
        .filter(|c| c.pos_atoms().all(|a| m.contains(&a)))
        .map(|c| c.head)
        .collect()
}

/// Two-valued immediate consequences of a definite program.
pub fn tp_plus(g: &GroundProgram, m: &TwoValuedInterpretation) -> Result<TwoValuedInterpretation> {
    if !g.is_definite() {
        return Err(Error::NotDefinite);
    }
    Ok(positive_consequences(g, &m.atoms).into())
}

/// The stages `T↑0 = ∅, T↑1, ...` of a definite program, ending with the
/// first repeated stage.
pub(crate) fn least_model_stages(g: &GroundProgram) -> Vec<AtomSet> {
    debug_assert!(g.is_definite());
    let mut stages = vec![AtomSet::new()];
    loop {
        let next = positive_consequences(g, stages.last().unwrap());
        let done = &next == stages.last().unwrap();
        stages.push(next);
        if done {
            return stages;
        }
    }
}

pub(crate) fn least_model_unchecked(g: &GroundProgram) -> AtomSet {
    least_model_stages(g).pop().unwrap_or_default()
}

/// Least two-valued model of a definite program, with its `T_P⁺` trace.
pub fn least_model(g: &GroundProgram) -> Result<(TwoValuedInterpretation, SemanticsTrace)> {
    if !g.is_definite() {
        return Err(Error::NotDefinite);
    }
    let stages = least_model_stages(g);
    let iterates: Vec<PartialInterpretation> = stages
        .into_iter()
        .map(|s| PartialInterpretation::new(s, AtomSet::new()).expect("no false atoms"))
        .collect();
    let fixpoint_index = iterates.len() - 2;
    let model = iterates[fixpoint_index].true_set().clone().into();
    Ok((model, SemanticsTrace { operator: Operator::TpPlus, iterates, fixpoint_index }))
}

/// The least model totalized over the base.
pub fn definite_partial_model(g: &GroundProgram) -> Result<PartialInterpretation> {
    let (m, _) = least_model(g)?;
    Ok(m.totalize(g.base()))
}
