//! Dependency relations between atoms, components under mutual negative
//! dependence, bottom strata and layers, the three-step reduct and the
//! weakly perfect model construction. Also checks local stratification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde_json::{json, Value};

use crate::interp::PartialInterpretation;
use crate::levelmaps::{Level, LevelMapping};
use crate::operators::least_model_stages;
use crate::syntax::{AtomId, AtomSet, GroundClause, GroundProgram};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub atoms: AtomSet,
    /// A single atom that does not depend negatively on itself.
    pub trivial: bool,
}

/// Dependency relations over the atoms occurring in a program.
#[derive(Debug, Clone)]
pub struct DependencyInfo {
    pub atoms: AtomSet,
    /// `(A, B)`: `B` or `¬B` occurs in the body of a clause with head `A`.
    pub refers_to: BTreeSet<(AtomId, AtomId)>,
    /// `(A, B)`: `¬B` occurs in the body of a clause with head `A`.
    pub refers_neg: BTreeSet<(AtomId, AtomId)>,
    /// `depends_on[A]` = `{B | B ≤ A}`, the transitive closure of `refers_to`.
    pub depends_on: BTreeMap<AtomId, AtomSet>,
    /// `neg_depends_on[A]` = `{B | B < A}`.
    pub neg_depends_on: BTreeMap<AtomId, AtomSet>,
    pub components: Vec<Component>,
}

impl DependencyInfo {
    /// `B ≤ A`: `A` depends on `B`.
    pub fn leq(&self, b: AtomId, a: AtomId) -> bool {
        self.depends_on.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// `B < A`: `A` depends negatively on `B`.
    pub fn lt(&self, b: AtomId, a: AtomId) -> bool {
        self.neg_depends_on.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn equivalent(&self, a: AtomId, b: AtomId) -> bool {
        a == b || (self.lt(a, b) && self.lt(b, a))
    }

    pub fn component_of(&self, a: AtomId) -> Option<usize> {
        self.components.iter().position(|c| c.atoms.contains(&a))
    }

    /// `C1 ≺ C2`: distinct, and every atom of `C1` is below some atom of `C2`.
    pub fn precedes(&self, c1: usize, c2: usize) -> bool {
        c1 != c2
            && self.components[c1]
                .atoms
                .iter()
                .all(|&a1| self.components[c2].atoms.iter().any(|&a2| self.lt(a1, a2)))
    }

    /// Some component preceding `c`, if any.
    pub fn predecessor(&self, c: usize) -> Option<usize> {
        (0..self.components.len()).find(|&other| self.precedes(other, c))
    }
}

/// Builds the relations of `g` over the atoms occurring in its clauses.
pub fn dependency(g: &GroundProgram) -> DependencyInfo {
    let atoms = g.occurring_atoms();
    let mut refers_to = BTreeSet::new();
    let mut refers_neg = BTreeSet::new();
    let mut succ: BTreeMap<AtomId, AtomSet> = atoms.iter().map(|&a| (a, AtomSet::new())).collect();
    for c in g.clauses() {
        for l in &c.body {
            refers_to.insert((c.head, l.atom));
            succ.get_mut(&c.head).unwrap().insert(l.atom);
            if !l.positive {
                refers_neg.insert((c.head, l.atom));
            }
        }
    }

    let mut depends_on = BTreeMap::new();
    for &a in &atoms {
        let mut seen = AtomSet::new();
        let mut stack: Vec<AtomId> = succ[&a].iter().copied().collect();
        while let Some(b) = stack.pop() {
            if seen.insert(b) {
                stack.extend(succ[&b].iter().copied());
            }
        }
        depends_on.insert(a, seen);
    }

    let mut neg_depends_on = BTreeMap::new();
    for &a in &atoms {
        let mut below = AtomSet::new();
        let up = depends_on[&a].iter().copied().chain(std::iter::once(a));
        for c in up {
            for &(_, d) in refers_neg.range((c, AtomId(0))..=(c, AtomId(u32::MAX))) {
                below.insert(d);
                below.extend(depends_on[&d].iter().copied());
            }
        }
        neg_depends_on.insert(a, below);
    }

    let mut info = DependencyInfo {
        atoms,
        refers_to,
        refers_neg,
        depends_on,
        neg_depends_on,
        components: Vec::new(),
    };
    let mut assigned = AtomSet::new();
    let mut components = Vec::new();
    for &a in &info.atoms {
        if assigned.contains(&a) {
            continue;
        }
        let members: AtomSet =
            info.atoms.iter().copied().filter(|&b| info.equivalent(a, b)).collect();
        assigned.extend(members.iter().copied());
        let trivial = members.len() == 1 && !info.lt(a, a);
        components.push(Component { atoms: members, trivial });
    }
    info.components = components;
    info
}

/// The bottom stratum together with the evidence for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomStratum {
    pub atoms: AtomSet,
    /// Indices (into [`DependencyInfo::components`]) of the minimal components.
    pub minimal: Vec<usize>,
    /// For every non-minimal component, one component preceding it.
    pub components_below: Vec<(usize, usize)>,
}

pub fn bottom_stratum_of(info: &DependencyInfo) -> BottomStratum {
    let mut atoms = AtomSet::new();
    let mut minimal = Vec::new();
    let mut components_below = Vec::new();
    for (i, comp) in info.components.iter().enumerate() {
        match info.predecessor(i) {
            Some(p) => components_below.push((i, p)),
            None => {
                minimal.push(i);
                atoms.extend(comp.atoms.iter().copied());
            }
        }
    }
    BottomStratum { atoms, minimal, components_below }
}

/// Union of the minimal components of `g`.
pub fn bottom_stratum(g: &GroundProgram) -> (AtomSet, BottomStratum) {
    let s = bottom_stratum_of(&dependency(g));
    (s.atoms.clone(), s)
}

fn layer_for(g: &GroundProgram, stratum: &AtomSet) -> GroundProgram {
    GroundProgram::from_parts(
        g.table().clone(),
        stratum.clone(),
        g.clauses().iter().filter(|c| stratum.contains(&c.head)).cloned(),
    )
}

/// Clauses of `g` whose head lies in the bottom stratum. The base is the
/// stratum plus every atom of the selected clauses.
pub fn bottom_layer(g: &GroundProgram) -> GroundProgram {
    layer_for(g, &bottom_stratum(g).0)
}

/// The three-step reduct `P/I`:
/// 1. drop clauses with a body literal false in `i` or a head true in `i`;
/// 2. drop body literals true in `i`;
/// 3. drop non-unit clauses whose head also has a unit clause.
pub fn wp_reduct(g: &GroundProgram, i: &PartialInterpretation) -> GroundProgram {
    let step2: Vec<GroundClause> = g
        .clauses()
        .iter()
        .filter(|c| {
            !i.is_true(c.head)
                && c.body.iter().all(|&l| i.literal_value(l) != crate::interp::TruthValue::False)
        })
        .map(|c| {
            GroundClause::new(
                c.head,
                c.body
                    .iter()
                    .copied()
                    .filter(|&l| i.literal_value(l) != crate::interp::TruthValue::True)
                    .collect(),
            )
        })
        .collect();
    let facts: AtomSet = step2.iter().filter(|c| c.is_unit()).map(|c| c.head).collect();
    g.with_clauses(step2.into_iter().filter(|c| c.is_unit() || !facts.contains(&c.head)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpKind {
    Total,
    Partial,
}

impl fmt::Display for WpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WpKind::Total => "total",
            WpKind::Partial => "partial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The reduced program has no clauses left.
    EmptyProgram,
    EmptyStratum,
    /// The bottom layer contains a negative literal.
    NegativeLayer,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::EmptyProgram => "empty-program",
            StopReason::EmptyStratum => "empty-stratum",
            StopReason::NegativeLayer => "negative-layer",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RoundOutcome {
    /// `M_α` and the `T⁺` stages of the (definite) layer.
    Continue { model: PartialInterpretation, layer_stages: Vec<AtomSet> },
    Stop(StopReason),
}

/// One stage `α` of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Round {
    /// `α`, starting at 1.
    pub index: usize,
    /// `N_α`.
    pub accumulated: PartialInterpretation,
    /// `P_α = P/N_α`.
    pub program: GroundProgram,
    /// `R_α`.
    pub eliminated: AtomSet,
    /// `S_α`.
    pub stratum: AtomSet,
    /// `L_α`.
    pub layer: GroundProgram,
    /// The part of `S_α` solved in this round: all of it under
    /// [`WpVariant::Strict`], its trivial components otherwise.
    pub solved: AtomSet,
    pub outcome: RoundOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeaklyPerfectResult {
    pub model: PartialInterpretation,
    pub kind: WpKind,
    pub rounds: Vec<Round>,
}

impl WeaklyPerfectResult {
    pub fn to_json(&self, g: &GroundProgram) -> Value {
        let (table, base) = (g.table(), g.base());
        let rounds: Vec<Value> = self
            .rounds
            .iter()
            .map(|r| {
                let m = match &r.outcome {
                    RoundOutcome::Continue { model, .. } => model.to_json(table, base),
                    RoundOutcome::Stop(reason) => json!({ "stop": reason.to_string() }),
                };
                json!({
                    "N": r.accumulated.to_json(table, base),
                    "P": r.program.clause_strings(),
                    "R": g.names(&r.eliminated),
                    "S": g.names(&r.stratum),
                    "layer": r.layer.clause_strings(),
                    "solved": g.names(&r.solved),
                    "M": m,
                })
            })
            .collect();
        json!({
            "kind": self.kind.to_string(),
            "model": self.model.to_json(table, base),
            "rounds": rounds,
        })
    }
}

/// Which minimal components a round solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WpVariant {
    /// The whole bottom stratum; a negative literal anywhere in the bottom
    /// layer stops the construction. Can lose atoms that the level-mapping
    /// characterization decides, e.g. `b` in `a :- not a. b.`.
    Strict,
    /// Only the trivial minimal components; the construction stops when
    /// there are none. Their layer is always definite.
    #[default]
    TrivialComponents,
}

/// Weakly perfect model: repeatedly reduce by what is known, solve the
/// definite bottom layer, and falsify atoms eliminated by the reduction.
pub fn weakly_perfect(g: &GroundProgram) -> Result<WeaklyPerfectResult> {
    weakly_perfect_with(g, WpVariant::default())
}

pub fn weakly_perfect_with(g: &GroundProgram, variant: WpVariant) -> Result<WeaklyPerfectResult> {
    let mut known = PartialInterpretation::empty();
    let mut rounds = Vec::new();
    let guard = g.base().len() + 2;
    for index in 1.. {
        if index > guard {
            return Err(Error::Internal("weakly perfect construction did not terminate".into()));
        }
        let program = wp_reduct(g, &known);
        let occurring = program.occurring_atoms();
        debug_assert!(occurring.iter().all(|&a| !known.is_defined(a)));
        let eliminated: AtomSet = g
            .base()
            .iter()
            .copied()
            .filter(|&a| !known.is_defined(a) && !occurring.contains(&a))
            .collect();

        let (stratum, layer, solved, solved_layer, stop) = if program.is_empty() {
            let empty = program.with_clauses([]);
            (AtomSet::new(), empty.clone(), AtomSet::new(), empty, Some(StopReason::EmptyProgram))
        } else {
            let info = dependency(&program);
            let bottom = bottom_stratum_of(&info);
            let layer = layer_for(&program, &bottom.atoms);
            let solved: AtomSet = match variant {
                WpVariant::Strict => bottom.atoms.clone(),
                WpVariant::TrivialComponents => bottom
                    .minimal
                    .iter()
                    .filter(|&&c| info.components[c].trivial)
                    .flat_map(|&c| info.components[c].atoms.iter().copied())
                    .collect(),
            };
            let solved_layer = layer_for(&program, &solved);
            let stop = if solved.is_empty() && layer.is_definite() {
                Some(StopReason::EmptyStratum)
            } else if solved.is_empty() || !solved_layer.is_definite() {
                Some(StopReason::NegativeLayer)
            } else {
                None
            };
            (bottom.atoms, layer, solved, solved_layer, stop)
        };

        if let Some(reason) = stop {
            let false_set = known.false_set().union(&eliminated).copied().collect();
            let model = PartialInterpretation::new(known.true_set().clone(), false_set)
                .map_err(|e| Error::Internal(e.to_string()))?;
            let kind =
                if reason == StopReason::EmptyProgram { WpKind::Total } else { WpKind::Partial };
            rounds.push(Round {
                index,
                accumulated: known,
                program,
                eliminated,
                stratum,
                layer,
                solved,
                outcome: RoundOutcome::Stop(reason),
            });
            return Ok(WeaklyPerfectResult { model, kind, rounds });
        }

        // Definite layer: its least model, totalized over the layer's base.
        let layer_stages = least_model_stages(&solved_layer);
        let least = layer_stages.last().cloned().unwrap_or_default();
        let false_set: AtomSet = solved_layer
            .base()
            .difference(&least)
            .copied()
            .chain(eliminated.iter().copied())
            .collect();
        let model = PartialInterpretation::new(least, false_set)
            .map_err(|e| Error::Internal(e.to_string()))?;
        let accumulated = known.clone();
        known = known.union(&model).map_err(|e| Error::Internal(e.to_string()))?;
        rounds.push(Round {
            index,
            accumulated,
            program,
            eliminated,
            stratum,
            layer,
            solved,
            outcome: RoundOutcome::Continue { model, layer_stages },
        });
    }
    unreachable!()
}

/// Checks local stratification: no strongly connected region of the
/// dependency graph contains a negative edge. The witness assigns each atom
/// the largest number of negative edges on a dependency path below it.
pub fn local_stratification(g: &GroundProgram) -> (bool, Option<LevelMapping>) {
    let mut graph: DiGraph<AtomId, bool> = DiGraph::new();
    let nodes: BTreeMap<AtomId, NodeIndex> =
        g.base().iter().map(|&a| (a, graph.add_node(a))).collect();
    for c in g.clauses() {
        for l in &c.body {
            graph.add_edge(nodes[&c.head], nodes[&l.atom], !l.positive);
        }
    }
    // Components come out dependencies-first.
    let sccs = tarjan_scc(&graph);
    let mut scc_of = vec![0usize; graph.node_count()];
    for (i, scc) in sccs.iter().enumerate() {
        for n in scc {
            scc_of[n.index()] = i;
        }
    }
    let mut level = vec![0u64; sccs.len()];
    for (i, scc) in sccs.iter().enumerate() {
        for &n in scc {
            for e in graph.edges(n) {
                use petgraph::visit::EdgeRef;
                let (target, negative) = (scc_of[e.target().index()], *e.weight());
                if target == i {
                    if negative {
                        return (false, None);
                    }
                    continue;
                }
                level[i] = level[i].max(level[target] + u64::from(negative));
            }
        }
    }
    let mapping = nodes
        .iter()
        .map(|(&a, n)| (a, Level::finite(level[scc_of[n.index()]])))
        .collect();
    (true, Some(LevelMapping::new(mapping)))
}
