use super::{Level, LevelMapping};
use crate::interp::{PartialInterpretation, TwoValuedInterpretation};
use crate::operators::{least_model_stages, lfp, Operator};
use crate::stable::{afp, gl_reduct, is_stable};
use crate::strata::{weakly_perfect, RoundOutcome};
use crate::syntax::{AtomId, AtomSet, GroundProgram};
use crate::{Error, Result};

/// A semantics together with the stages its canonical level mapping is read
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantics {
    Least,
    Fitting,
    Wf,
    Ws,
    Afp,
    Stable(TwoValuedInterpretation),
}

/// First `n` with `a ∈ stages[n + 1]`.
fn stage(stages: &[AtomSet], a: AtomId) -> Option<u64> {
    stages.iter().skip(1).position(|s| s.contains(&a)).map(|n| n as u64)
}

/// Levels from a `T⁺` stage sequence: members of the least model get their
/// stage, every other base atom gets 0.
fn stage_levels(g: &GroundProgram, stages: &[AtomSet]) -> LevelMapping {
    g.base().iter().map(|&a| (a, Level::finite(stage(stages, a).unwrap_or(0)))).collect()
}

/// The model of `s` and the level mapping read off its iterates.
///
/// Least and stable models are returned totalized, with levels on the whole
/// base. The pair-valued mappings of the alternating fixed point and the
/// weakly perfect construction use `(round, stage)`, with `ω` for atoms that
/// become false.
pub fn canonical_levels(
    g: &GroundProgram,
    s: &Semantics,
) -> Result<(PartialInterpretation, LevelMapping)> {
    match s {
        Semantics::Least => {
            if !g.is_definite() {
                return Err(Error::NotDefinite);
            }
            let stages = least_model_stages(g);
            let model = TwoValuedInterpretation::new(stages.last().cloned().unwrap_or_default());
            Ok((model.totalize(g.base()), stage_levels(g, &stages)))
        }
        Semantics::Stable(m) => {
            if !is_stable(g, m) {
                return Err(Error::NotStable);
            }
            let stages = least_model_stages(&gl_reduct(g, m));
            Ok((m.totalize(g.base()), stage_levels(g, &stages)))
        }
        Semantics::Fitting | Semantics::Wf => {
            let op = if *s == Semantics::Fitting { Operator::Phi } else { Operator::Wp };
            let (model, trace) = lfp(g, op);
            let levels = model
                .defined()
                .into_iter()
                .map(|a| (a, Level::finite(trace.stage_of(a).expect("defined atom") as u64)))
                .collect();
            Ok((model, levels))
        }
        Semantics::Afp => {
            let r = afp(g);
            let mut levels = LevelMapping::default();
            for &a in &r.l_fix.atoms {
                let alpha = r.l_sequence.iter().skip(1).position(|l| l.contains(a)).expect("a ∈ L_P");
                let reduct = gl_reduct(g, &r.g_sequence[alpha]);
                let n = stage(&least_model_stages(&reduct), a).expect("a ∈ L_{α+1}");
                levels.set(a, Level::pair(alpha as u64, n));
            }
            for &b in g.base().difference(&r.g_fix.atoms) {
                let beta =
                    r.g_sequence.iter().skip(1).position(|m| !m.contains(b)).expect("b ∉ G_P");
                levels.set(b, Level::omega(beta as u64));
            }
            Ok((r.wf_model, levels))
        }
        Semantics::Ws => {
            let result = weakly_perfect(g)?;
            let mut levels = LevelMapping::default();
            for round in &result.rounds {
                let major = round.index as u64;
                for &a in &round.eliminated {
                    levels.set(a, Level::omega(major));
                }
                if let RoundOutcome::Continue { model, layer_stages } = &round.outcome {
                    for a in model.defined() {
                        if round.eliminated.contains(&a) {
                            continue;
                        }
                        let level = match stage(layer_stages, a) {
                            Some(n) => Level::pair(major, n),
                            None => Level::omega(major),
                        };
                        levels.set(a, level);
                    }
                }
            }
            let levels = levels.restrict(&result.model.defined());
            Ok((result.model, levels))
        }
    }
}
