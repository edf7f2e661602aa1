//! Level mappings: certification of semantics conditions, canonical
//! extraction from operator iterates, and a brute-force greatest-model oracle.

mod canonical;
mod certify;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::syntax::{AtomId, AtomSet, AtomTable};
use crate::{Error, Result};

pub use canonical::{canonical_levels, Semantics};
pub use certify::{certify, satisfies, AtomStatus, CertReport, Violation};
pub use oracle::{certifiable, greatest_certified_model, OracleResult, DEFAULT_ORACLE_CAP};

/// Second component of a [`Level`]: a natural number or `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Minor {
    Finite(u64),
    Omega,
}

/// Lexicographically ordered pair `(major, minor)`; plain naturals are
/// `(n, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level {
    pub major: u64,
    pub minor: Minor,
}

impl Level {
    pub fn finite(n: u64) -> Self {
        Self { major: n, minor: Minor::Finite(0) }
    }

    pub fn pair(major: u64, minor: u64) -> Self {
        Self { major, minor: Minor::Finite(minor) }
    }

    pub fn omega(major: u64) -> Self {
        Self { major, minor: Minor::Omega }
    }

    fn to_json(self) -> Value {
        let minor = match self.minor {
            Minor::Finite(m) => json!(m),
            Minor::Omega => json!("omega"),
        };
        json!({ "major": self.major, "minor": minor })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("invalid level `{v}`"));
        if let Some(n) = v.as_u64() {
            return Ok(Level::finite(n));
        }
        let major = v.get("major").and_then(Value::as_u64).ok_or_else(bad)?;
        let minor = match v.get("minor") {
            None => Minor::Finite(0),
            Some(Value::String(s)) if s == "omega" => Minor::Omega,
            Some(m) => Minor::Finite(m.as_u64().ok_or_else(bad)?),
        };
        Ok(Level { major, minor })
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.minor {
            Minor::Finite(0) => write!(f, "{}", self.major),
            Minor::Finite(m) => write!(f, "({},{})", self.major, m),
            Minor::Omega => write!(f, "({},ω)", self.major),
        }
    }
}

/// A finite partial map from atoms to levels. Negative literals take the
/// level of their atom.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelMapping {
    assignment: BTreeMap<AtomId, Level>,
}

impl LevelMapping {
    pub fn new(assignment: BTreeMap<AtomId, Level>) -> Self {
        Self { assignment }
    }

    pub fn get(&self, atom: AtomId) -> Option<Level> {
        self.assignment.get(&atom).copied()
    }

    pub fn set(&mut self, atom: AtomId, level: Level) {
        self.assignment.insert(atom, level);
    }

    pub fn domain(&self) -> AtomSet {
        self.assignment.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, Level)> + '_ {
        self.assignment.iter().map(|(&a, &l)| (a, l))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Restriction to `atoms`.
    pub fn restrict(&self, atoms: &AtomSet) -> Self {
        Self {
            assignment: self
                .assignment
                .iter()
                .filter(|(a, _)| atoms.contains(a))
                .map(|(&a, &l)| (a, l))
                .collect(),
        }
    }

    /// `{"levels": {"atom": {"major": n, "minor": m | "omega"}}}`
    pub fn to_json(&self, table: &AtomTable) -> Value {
        let levels: Map<String, Value> = self
            .assignment
            .iter()
            .map(|(&a, l)| (table.name(a).to_string(), l.to_json()))
            .collect();
        json!({ "levels": levels })
    }

    /// Accepts the [`to_json`](Self::to_json) shape; a bare natural is
    /// read as `(n, 0)`.
    pub fn from_json(value: &Value, table: &AtomTable) -> Result<Self> {
        let levels = value
            .get("levels")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidInput("expected an object with a `levels` map".into()))?;
        let mut assignment = BTreeMap::new();
        for (name, v) in levels {
            let id = table
                .lookup(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown atom `{name}`")))?;
            assignment.insert(id, Level::from_json(v)?);
        }
        Ok(Self { assignment })
    }

    pub fn render(&self, table: &AtomTable) -> String {
        self.assignment
            .iter()
            .map(|(&a, l)| format!("{}: {l}", table.name(a)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl FromIterator<(AtomId, Level)> for LevelMapping {
    fn from_iter<T: IntoIterator<Item = (AtomId, Level)>>(iter: T) -> Self {
        Self { assignment: iter.into_iter().collect() }
    }
}

/// The level-mapping conditions that can be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Least model of a definite program.
    Def,
    /// Stable models (Fages).
    Stable,
    /// Fitting semantics.
    F,
    /// Well-founded semantics.
    Wf,
    /// Weakly perfect model.
    Ws,
    /// (WF) with its first case replaced by the stratified (SFi).
    Sfi,
    /// Local stratification.
    LocStrat,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::Def,
        Condition::Stable,
        Condition::F,
        Condition::Wf,
        Condition::Ws,
        Condition::Sfi,
        Condition::LocStrat,
    ];

    /// Conditions stated for total interpretations.
    pub fn needs_total(self) -> bool {
        matches!(self, Condition::Def | Condition::Stable | Condition::Sfi)
    }

    /// Conditions whose level mapping is total over the base.
    pub fn needs_total_levels(self) -> bool {
        matches!(self, Condition::Def | Condition::Stable | Condition::LocStrat)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Def => "def",
            Condition::Stable => "stable",
            Condition::F => "f",
            Condition::Wf => "wf",
            Condition::Ws => "ws",
            Condition::Sfi => "sfi",
            Condition::LocStrat => "locstrat",
        })
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "def" | "least" => Condition::Def,
            "stable" => Condition::Stable,
            "f" | "fitting" => Condition::F,
            "wf" => Condition::Wf,
            "ws" => Condition::Ws,
            "sfi" => Condition::Sfi,
            "locstrat" => Condition::LocStrat,
            other => return Err(Error::InvalidInput(format!("unknown condition `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::GroundProgram;

    #[test]
    fn lexicographic_order() {
        assert!(Level::finite(0) < Level::pair(0, 1));
        assert!(Level::pair(0, 1_000_000) < Level::omega(0));
        assert!(Level::omega(0) < Level::finite(1));
        assert!(Level::pair(1, 0) < Level::pair(1, 1));
        assert_eq!(Level::finite(3), Level::pair(3, 0));
    }

    #[test]
    fn level_json() {
        let g = GroundProgram::parse("s :- q. q :- not p. p :- p.").unwrap();
        let l: LevelMapping = [
            (g.atom("q"), Level::pair(1, 0)),
            (g.atom("s"), Level::pair(1, 1)),
            (g.atom("p"), Level::omega(0)),
        ]
        .into_iter()
        .collect();
        let v = l.to_json(g.table());
        assert_eq!(
            v.to_string(),
            r#"{"levels":{"p":{"major":0,"minor":"omega"},"q":{"major":1,"minor":0},"s":{"major":1,"minor":1}}}"#
        );
        assert_eq!(LevelMapping::from_json(&v, g.table()).unwrap(), l);
        let plain = serde_json::json!({"levels": {"p": 2}});
        assert_eq!(LevelMapping::from_json(&plain, g.table()).unwrap().get(g.atom("p")), Some(Level::finite(2)));
        let bad = serde_json::json!({"levels": {"zz": 0}});
        assert!(LevelMapping::from_json(&bad, g.table()).is_err());
    }

    #[test]
    fn condition_names() {
        for c in Condition::ALL {
            assert_eq!(c.to_string().parse::<Condition>().unwrap(), c);
        }
        assert!("nope".parse::<Condition>().is_err());
    }
}
