use serde_json::{json, Value};

use super::certify::{atom_failure, checked_domain};
use super::Condition;
use crate::interp::{is_model, PartialInterpretation};
use crate::syntax::{AtomId, AtomSet, GroundProgram};
use crate::{Error, Result};

/// Default bound on `|base|` for [`greatest_certified_model`].
pub const DEFAULT_ORACLE_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub condition: Condition,
    /// Every model admitting a certifying level mapping.
    pub certified: Vec<PartialInterpretation>,
    /// The knowledge-maximal elements of `certified`.
    pub maximal: Vec<PartialInterpretation>,
    /// The greatest certified model, if there is one.
    pub greatest: Option<PartialInterpretation>,
}

impl OracleResult {
    pub fn to_json(&self, g: &GroundProgram) -> Value {
        let (t, b) = (g.table(), g.base());
        json!({
            "condition": self.condition.to_string(),
            "certified": self.certified.len(),
            "maximal_models": self.maximal.iter().map(|m| m.to_json(t, b)).collect::<Vec<_>>(),
            "greatest": self.greatest.as_ref().map(|m| m.to_json(t, b)),
        })
    }

    pub fn render(&self, g: &GroundProgram) -> String {
        let mut out = vec![format!("certified models: {}", self.certified.len())];
        for m in &self.maximal {
            out.push(format!("maximal: {}", m.literal_string(g.table())));
        }
        out.push(match &self.greatest {
            Some(m) => format!("greatest: {}", m.literal_string(g.table())),
            None => "greatest: none".to_string(),
        });
        out.join("\n")
    }
}

/// Whether some level mapping certifies `c` for `i`. Searches every
/// assignment of ranks `0..k` onto the constrained atoms; the conditions only
/// compare levels, so any witness collapses to such a ranking. Modelhood is
/// not checked here.
pub fn certifiable(g: &GroundProgram, i: &PartialInterpretation, c: Condition) -> bool {
    let domain: Vec<AtomId> = checked_domain(g, i, c).into_iter().collect();
    let n = domain.len();
    let size = g.table().len();
    // Levels by atom index; atoms outside the domain are unranked.
    let mut levels: Vec<Option<usize>> = vec![None; size];
    // Only true atoms are constrained under DEF and STABLE, but their
    // levels are total: the remaining atoms sit at rank 0.
    if matches!(c, Condition::Def | Condition::Stable) {
        for &a in g.base() {
            levels[a.index()] = Some(0);
        }
    }
    if n == 0 {
        return true;
    }
    let mut ranks = vec![0usize; n];
    loop {
        // Only rankings whose image is an initial segment `0..=max`.
        let max = *ranks.iter().max().unwrap();
        let mut used = vec![false; max + 1];
        for &r in &ranks {
            used[r] = true;
        }
        if used.iter().all(|&u| u) {
            for (k, &a) in domain.iter().enumerate() {
                levels[a.index()] = Some(ranks[k]);
            }
            let lv = |a: AtomId| levels[a.index()];
            if domain.iter().all(|&a| atom_failure(g, i, &lv, c, a).is_none()) {
                return true;
            }
        }
        // Next assignment in `0..n` per position.
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            ranks[k] += 1;
            if ranks[k] < n {
                break;
            }
            ranks[k] = 0;
            k += 1;
        }
    }
}

/// Brute force over all interpretations of the base: the models of `g` that
/// some level mapping certifies under `c`, their maximal elements, and the
/// greatest one if it exists. Total interpretations only for conditions that
/// require them.
pub fn greatest_certified_model(
    g: &GroundProgram,
    c: Condition,
    cap: usize,
) -> Result<OracleResult> {
    if c == Condition::LocStrat {
        return Err(Error::InvalidInput("local stratification has no model to search for".into()));
    }
    let base: Vec<AtomId> = g.base().iter().copied().collect();
    if base.len() > cap {
        return Err(Error::CapExceeded { cap, size: base.len() });
    }
    let radix: u64 = if c.needs_total() { 2 } else { 3 };
    let count = radix.pow(base.len() as u32);
    let mut certified = Vec::new();
    for code in 0..count {
        let (mut t, mut f) = (AtomSet::new(), AtomSet::new());
        let mut rest = code;
        for &a in &base {
            match rest % radix {
                0 => {
                    f.insert(a);
                }
                1 => {
                    t.insert(a);
                }
                _ => {}
            }
            rest /= radix;
        }
        let i = PartialInterpretation::new(t, f).expect("disjoint by construction");
        if is_model(g, &i) && certifiable(g, &i, c) {
            certified.push(i);
        }
    }
    let maximal: Vec<PartialInterpretation> = certified
        .iter()
        .filter(|i| !certified.iter().any(|j| j != *i && i.knowledge_leq(j)))
        .cloned()
        .collect();
    let greatest = match maximal.as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    };
    Ok(OracleResult { condition: c, certified, maximal, greatest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{lfp, Operator};
    use crate::stable::enumerate_stable;
    use crate::strata::weakly_perfect;

    fn pi(g: &GroundProgram, t: &[&str], f: &[&str]) -> PartialInterpretation {
        PartialInterpretation::new(g.atoms(t.iter().copied()), g.atoms(f.iter().copied())).unwrap()
    }

    #[test]
    fn fitting_greatest() {
        let g = GroundProgram::parse("p :- p. q :- not r.").unwrap();
        let r = greatest_certified_model(&g, Condition::F, 5).unwrap();
        assert_eq!(r.greatest, Some(pi(&g, &["q"], &["r"])));
    }

    #[test]
    fn well_founded_greatest() {
        let g = GroundProgram::parse("s :- q. q :- not p. p :- p. r :- not r.").unwrap();
        let r = greatest_certified_model(&g, Condition::Wf, 5).unwrap();
        assert_eq!(r.greatest, Some(pi(&g, &["q", "s"], &["p"])));
        assert_eq!(r.greatest.as_ref(), Some(&lfp(&g, Operator::Wp).0));
    }

    #[test]
    fn weakly_perfect_greatest() {
        let g = GroundProgram::parse(
            "a :- not b. b :- c, not a. b :- c, not d. c :- b, not e. d :- e. e :- d.",
        )
        .unwrap();
        let r = greatest_certified_model(&g, Condition::Ws, 5).unwrap();
        assert_eq!(r.greatest, Some(weakly_perfect(&g).unwrap().model));
    }

    #[test]
    fn sfi_has_no_greatest() {
        let g = GroundProgram::parse("p :- p. q :- not p.").unwrap();
        let r = greatest_certified_model(&g, Condition::Sfi, 5).unwrap();
        assert_eq!(r.maximal.len(), 2);
        assert!(r.maximal.contains(&pi(&g, &["p"], &["q"])));
        assert!(r.maximal.contains(&pi(&g, &["q"], &["p"])));
        assert_eq!(r.greatest, None);
    }

    #[test]
    fn stable_certifiable_matches_enumeration() {
        let g = GroundProgram::parse("a :- not b. b :- not a. c :- a, not d. c :- c.").unwrap();
        let r = greatest_certified_model(&g, Condition::Stable, 5).unwrap();
        let mut found: Vec<_> = r.certified.iter().map(|i| i.true_set().clone()).collect();
        found.sort();
        let expected: Vec<_> =
            enumerate_stable(&g, 20).unwrap().into_iter().map(|m| m.atoms).collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn cap() {
        let g = GroundProgram::parse("a. b. c.").unwrap();
        assert!(matches!(
            greatest_certified_model(&g, Condition::F, 2),
            Err(Error::CapExceeded { cap: 2, size: 3 })
        ));
    }
}
