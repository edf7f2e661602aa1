//! Three- and two-valued interpretations, truth evaluation and model checking.

use serde_json::{json, Value};

use crate::syntax::{AtomId, AtomSet, AtomTable, GroundClause, GroundLiteral, GroundProgram};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Undefined,
}

impl TruthValue {
    /// Swaps true and false; undefined stays undefined.
    pub fn flip(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
        }
    }
}

/// A consistent pair of true and false atoms. Atoms in neither set are
/// undefined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PartialInterpretation {
    true_set: AtomSet,
    false_set: AtomSet,
}

impl PartialInterpretation {
    pub fn new(true_set: AtomSet, false_set: AtomSet) -> Result<Self> {
        if let Some(a) = true_set.intersection(&false_set).next() {
            return Err(Error::Inconsistent(format!("#{}", a.0)));
        }
        Ok(Self { true_set, false_set })
    }

    /// Like [`new`](Self::new), with atom names in the error.
    pub fn checked(table: &AtomTable, true_set: AtomSet, false_set: AtomSet) -> Result<Self> {
        if let Some(&a) = true_set.intersection(&false_set).next() {
            return Err(Error::Inconsistent(table.name(a).to_string()));
        }
        Ok(Self { true_set, false_set })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn true_set(&self) -> &AtomSet {
        &self.true_set
    }

    pub fn false_set(&self) -> &AtomSet {
        &self.false_set
    }

    pub fn into_parts(self) -> (AtomSet, AtomSet) {
        (self.true_set, self.false_set)
    }

    pub fn value(&self, atom: AtomId) -> TruthValue {
        if self.true_set.contains(&atom) {
            TruthValue::True
        } else if self.false_set.contains(&atom) {
            TruthValue::False
        } else {
            TruthValue::Undefined
        }
    }

    pub fn is_true(&self, atom: AtomId) -> bool {
        self.true_set.contains(&atom)
    }

    pub fn is_false(&self, atom: AtomId) -> bool {
        self.false_set.contains(&atom)
    }

    pub fn is_defined(&self, atom: AtomId) -> bool {
        self.is_true(atom) || self.is_false(atom)
    }

    /// Atoms that are true or false.
    pub fn defined(&self) -> AtomSet {
        self.true_set.union(&self.false_set).copied().collect()
    }

    pub fn defined_count(&self) -> usize {
        self.true_set.len() + self.false_set.len()
    }

    pub fn undefined(&self, base: &AtomSet) -> AtomSet {
        base.iter().copied().filter(|a| !self.is_defined(*a)).collect()
    }

    pub fn is_total(&self, base: &AtomSet) -> bool {
        base.iter().all(|a| self.is_defined(*a))
    }

    pub fn literal_value(&self, lit: GroundLiteral) -> TruthValue {
        let v = self.value(lit.atom);
        if lit.positive {
            v
        } else {
            v.flip()
        }
    }

    /// Conjunction value; the empty body is true.
    pub fn body_value(&self, body: &[GroundLiteral]) -> TruthValue {
        let mut all_true = true;
        for &lit in body {
            match self.literal_value(lit) {
                TruthValue::False => return TruthValue::False,
                TruthValue::Undefined => all_true = false,
                TruthValue::True => {}
            }
        }
        if all_true {
            TruthValue::True
        } else {
            TruthValue::Undefined
        }
    }

    /// Knowledge ordering: both the true and the false part are included.
    pub fn knowledge_leq(&self, other: &Self) -> bool {
        self.true_set.is_subset(&other.true_set) && self.false_set.is_subset(&other.false_set)
    }

    /// Union of two interpretations; fails when the result is inconsistent.
    pub fn union(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.true_set.union(&other.true_set).copied().collect(),
            self.false_set.union(&other.false_set).copied().collect(),
        )
    }

    /// Restriction to the atoms of `atoms`.
    pub fn restrict(&self, atoms: &AtomSet) -> Self {
        Self {
            true_set: self.true_set.intersection(atoms).copied().collect(),
            false_set: self.false_set.intersection(atoms).copied().collect(),
        }
    }

    pub fn to_json(&self, table: &AtomTable, base: &AtomSet) -> Value {
        let names = |s: &AtomSet| s.iter().map(|&a| table.name(a).to_string()).collect::<Vec<_>>();
        json!({
            "true": names(&self.true_set),
            "false": names(&self.false_set),
            "undefined": names(&self.undefined(base)),
        })
    }

    /// Reads `{"true": [...], "false": [...]}`; an `undefined` list, if
    /// present, is ignored.
    pub fn from_json(value: &Value, table: &AtomTable) -> Result<Self> {
        let list = |key: &str| -> Result<AtomSet> {
            let Some(v) = value.get(key) else { return Ok(AtomSet::new()) };
            let arr = v
                .as_array()
                .ok_or_else(|| Error::InvalidInput(format!("`{key}` must be an array")))?;
            arr.iter()
                .map(|x| {
                    let name = x.as_str().ok_or_else(|| {
                        Error::InvalidInput(format!("`{key}` entries must be strings"))
                    })?;
                    table
                        .lookup(name)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown atom `{name}`")))
                })
                .collect()
        };
        if !value.is_object() {
            return Err(Error::InvalidInput("model must be a JSON object".into()));
        }
        Self::checked(table, list("true")?, list("false")?)
    }

    /// Human-readable `true: {..}` / `false: {..}` / `undefined: {..}` lines.
    pub fn render(&self, table: &AtomTable, base: &AtomSet) -> String {
        let fmt = |s: &AtomSet| {
            s.iter().map(|&a| table.name(a)).collect::<Vec<_>>().join(", ")
        };
        format!(
            "true: {{{}}}\nfalse: {{{}}}\nundefined: {{{}}}",
            fmt(&self.true_set),
            fmt(&self.false_set),
            fmt(&self.undefined(base))
        )
    }

    /// Literal-set notation, e.g. `{q, s, ¬p}`.
    pub fn literal_string(&self, table: &AtomTable) -> String {
        let mut parts: Vec<String> =
            self.true_set.iter().map(|&a| table.name(a).to_string()).collect();
        parts.extend(self.false_set.iter().map(|&a| format!("¬{}", table.name(a))));
        format!("{{{}}}", parts.join(", "))
    }
}

/// A set of true atoms; everything else in the base is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedInterpretation {
    pub atoms: AtomSet,
}

impl TwoValuedInterpretation {
    pub fn new(atoms: AtomSet) -> Self {
        Self { atoms }
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.atoms.contains(&atom)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.atoms.is_subset(&other.atoms)
    }

    /// The total interpretation `M ∪ ¬(base ∖ M)`.
    pub fn totalize(&self, base: &AtomSet) -> PartialInterpretation {
        totalize(self, base)
    }
}

impl From<AtomSet> for TwoValuedInterpretation {
    fn from(atoms: AtomSet) -> Self {
        Self { atoms }
    }
}

pub fn literal_value(i: &PartialInterpretation, lit: GroundLiteral) -> TruthValue {
    i.literal_value(lit)
}

pub fn body_value(i: &PartialInterpretation, body: &[GroundLiteral]) -> TruthValue {
    i.body_value(body)
}

pub fn knowledge_leq(i: &PartialInterpretation, j: &PartialInterpretation) -> bool {
    i.knowledge_leq(j)
}

pub fn totalize(m: &TwoValuedInterpretation, base: &AtomSet) -> PartialInterpretation {
    PartialInterpretation {
        true_set: m.atoms.clone(),
        false_set: base.difference(&m.atoms).copied().collect(),
    }
}

/// The first clause violating modelhood, if any.
pub fn model_violation<'a>(
    g: &'a GroundProgram,
    i: &PartialInterpretation,
) -> Option<&'a GroundClause> {
    g.clauses().iter().find(|c| match i.body_value(&c.body) {
        TruthValue::True => !i.is_true(c.head),
        TruthValue::Undefined => i.is_false(c.head),
        TruthValue::False => false,
    })
}

/// True body forces a true head; undefined body forbids a false head.
pub fn is_model(g: &GroundProgram, i: &PartialInterpretation) -> bool {
    model_violation(g, i).is_none()
}
