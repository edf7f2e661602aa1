use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{Atom, Clause, Literal, Program, Term};
use crate::Error;

/// Constant added to the Herbrand universe when the program has none.
pub const DEFAULT_CONSTANT: &str = "c0";

/// Index of a ground atom in an [`AtomTable`]. Ids follow display order, so
/// ordered collections of ids iterate in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type AtomSet = BTreeSet<AtomId>;

/// Interned ground atoms shared by a program and everything derived from it
/// (reducts, layers, interpretations).
#[derive(Debug, Clone, Default)]
pub struct AtomTable {
    atoms: Vec<Atom>,
    names: Vec<String>,
    by_name: HashMap<String, AtomId>,
}

impl AtomTable {
    /// Builds a table over `atoms`, sorted by [`Atom::display_key`].
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        atoms.sort_by_cached_key(Atom::display_key);
        let names: Vec<String> = atoms.iter().map(ToString::to_string).collect();
        let by_name = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), AtomId(i as u32)))
            .collect();
        Self { atoms, names, by_name }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    /// Looks up an atom by its rendered form, e.g. `p(s(0))`.
    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.by_name.get(name).copied()
    }

    pub fn id_of(&self, atom: &Atom) -> Option<AtomId> {
        self.lookup(&atom.to_string())
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.atoms.len() as u32).map(AtomId)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLiteral {
    pub atom: AtomId,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundClause {
    pub head: AtomId,
    pub body: Vec<GroundLiteral>,
}

impl GroundClause {
    pub fn new(head: AtomId, body: Vec<GroundLiteral>) -> Self {
        Self { head, body }
    }

    pub fn pos_atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.body.iter().filter(|l| l.positive).map(|l| l.atom)
    }

    pub fn neg_atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.body.iter().filter(|l| !l.positive).map(|l| l.atom)
    }

    pub fn is_definite(&self) -> bool {
        self.body.iter().all(|l| l.positive)
    }

    pub fn is_unit(&self) -> bool {
        self.body.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        std::iter::once(self.head).chain(self.body.iter().map(|l| l.atom))
    }

    pub fn render(&self, table: &AtomTable) -> String {
        let mut s = table.name(self.head).to_string();
        if !self.body.is_empty() {
            s.push_str(" :- ");
            let body: Vec<String> = self
                .body
                .iter()
                .map(|l| {
                    if l.positive {
                        table.name(l.atom).to_string()
                    } else {
                        format!("not {}", table.name(l.atom))
                    }
                })
                .collect();
            s.push_str(&body.join(", "));
        }
        s.push('.');
        s
    }
}

/// A finite set of ground clauses together with its Herbrand base.
#[derive(Debug, Clone)]
pub struct GroundProgram {
    table: Arc<AtomTable>,
    base: AtomSet,
    clauses: Vec<GroundClause>,
    by_head: Vec<Vec<usize>>,
}

impl PartialEq for GroundProgram {
    fn eq(&self, other: &Self) -> bool {
        self.base_atoms() == other.base_atoms() && self.clause_strings() == other.clause_strings()
    }
}

impl GroundProgram {
    /// Builds a program over `table`. Duplicate clauses are dropped (first
    /// occurrence kept) and every clause atom is added to `base`.
    pub fn from_parts(
        table: Arc<AtomTable>,
        mut base: AtomSet,
        clauses: impl IntoIterator<Item = GroundClause>,
    ) -> Self {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for clause in clauses {
            if seen.insert(clause.clone()) {
                base.extend(clause.atoms());
                kept.push(clause);
            }
        }
        let mut by_head = vec![Vec::new(); table.len()];
        for (i, c) in kept.iter().enumerate() {
            by_head[c.head.index()].push(i);
        }
        Self { table, base, clauses: kept, by_head }
    }

    /// Parses and grounds a program without a depth bound.
    pub fn parse(text: &str) -> Result<Self, Error> {
        ground(&super::parse_program(text)?, None)
    }

    /// Same atom table and base, different clauses.
    pub fn with_clauses(&self, clauses: impl IntoIterator<Item = GroundClause>) -> Self {
        Self::from_parts(self.table.clone(), self.base.clone(), clauses)
    }

    pub fn table(&self) -> &Arc<AtomTable> {
        &self.table
    }

    pub fn base(&self) -> &AtomSet {
        &self.base
    }

    pub fn clauses(&self) -> &[GroundClause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn clauses_for(&self, head: AtomId) -> impl Iterator<Item = &GroundClause> + '_ {
        self.by_head
            .get(head.index())
            .into_iter()
            .flatten()
            .map(move |&i| &self.clauses[i])
    }

    pub fn has_clause_for(&self, head: AtomId) -> bool {
        self.by_head.get(head.index()).is_some_and(|v| !v.is_empty())
    }

    pub fn is_definite(&self) -> bool {
        self.clauses.iter().all(GroundClause::is_definite)
    }

    pub fn head_atoms(&self) -> AtomSet {
        self.clauses.iter().map(|c| c.head).collect()
    }

    /// Atoms occurring anywhere in a clause, head or body.
    pub fn occurring_atoms(&self) -> AtomSet {
        self.clauses.iter().flat_map(GroundClause::atoms).collect()
    }

    pub fn name(&self, id: AtomId) -> &str {
        self.table.name(id)
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.table.lookup(name)
    }

    /// Id of a named atom; panics when absent. Meant for tests and fixtures.
    pub fn atom(&self, name: &str) -> AtomId {
        self.lookup(name).unwrap_or_else(|| panic!("no atom named `{name}`"))
    }

    /// Set of ids for the named atoms; panics on unknown names.
    pub fn atoms<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> AtomSet {
        names.into_iter().map(|n| self.atom(n)).collect()
    }

    /// Herbrand base in display order.
    pub fn herbrand_base(&self) -> Vec<&Atom> {
        self.base.iter().map(|&id| self.table.atom(id)).collect()
    }

    pub fn base_atoms(&self) -> Vec<&str> {
        self.base.iter().map(|&id| self.name(id)).collect()
    }

    pub fn names(&self, set: &AtomSet) -> Vec<String> {
        set.iter().map(|&id| self.name(id).to_string()).collect()
    }

    /// Clauses rendered in concrete syntax, sorted.
    pub fn clause_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.clauses.iter().map(|c| c.render(&self.table)).collect();
        v.sort();
        v
    }

    /// Back to a (ground) [`Program`]; the base becomes `#atom` vocabulary.
    pub fn to_program(&self) -> Program {
        let lit = |l: &GroundLiteral| Literal {
            positive: l.positive,
            atom: self.table.atom(l.atom).clone(),
        };
        Program {
            clauses: self
                .clauses
                .iter()
                .map(|c| Clause {
                    head: self.table.atom(c.head).clone(),
                    body: c.body.iter().map(lit).collect(),
                })
                .collect(),
            declared_atoms: self.herbrand_base().into_iter().cloned().collect(),
        }
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}", c.render(&self.table))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Signature {
    constants: BTreeSet<String>,
    functors: BTreeSet<(String, usize)>,
    predicates: BTreeSet<(String, usize)>,
}

impl Signature {
    fn of(program: &Program) -> Self {
        let mut sig = Signature::default();
        let atoms = program
            .clauses
            .iter()
            .flat_map(|c| std::iter::once(&c.head).chain(c.body.iter().map(|l| &l.atom)))
            .chain(program.declared_atoms.iter());
        for atom in atoms {
            sig.predicates.insert((atom.predicate.clone(), atom.args.len()));
            atom.args.iter().for_each(|t| sig.visit(t));
        }
        sig
    }

    fn visit(&mut self, term: &Term) {
        match term {
            Term::Var(_) => {}
            Term::Const(c) => {
                self.constants.insert(c.clone());
            }
            Term::Compound(f, args) => {
                self.functors.insert((f.clone(), args.len()));
                args.iter().for_each(|t| self.visit(t));
            }
        }
    }

    /// Ground terms of depth at most `depth`.
    fn universe(&self, depth: usize) -> Vec<Term> {
        let mut terms: Vec<Term> = if self.constants.is_empty() {
            vec![Term::Const(DEFAULT_CONSTANT.into())]
        } else {
            self.constants.iter().cloned().map(Term::Const).collect()
        };
        for _ in 0..depth {
            let mut next: BTreeSet<Term> = terms.iter().cloned().collect();
            for (f, arity) in &self.functors {
                for args in tuples(&terms, *arity) {
                    next.insert(Term::Compound(f.clone(), args));
                }
            }
            if next.len() == terms.len() {
                break;
            }
            terms = next.into_iter().collect();
        }
        terms
    }
}

/// All length-`n` tuples over `items`, in odometer order.
fn tuples<T: Clone>(items: &[T], n: usize) -> Vec<Vec<T>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if items.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < items.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn substitute(term: &Term, binding: &BTreeMap<&str, &Term>) -> Term {
    match term {
        Term::Var(v) => binding[v.as_str()].clone(),
        Term::Const(_) => term.clone(),
        Term::Compound(f, args) => {
            Term::Compound(f.clone(), args.iter().map(|a| substitute(a, binding)).collect())
        }
    }
}

fn substitute_atom(atom: &Atom, binding: &BTreeMap<&str, &Term>) -> Atom {
    Atom {
        predicate: atom.predicate.clone(),
        args: atom.args.iter().map(|t| substitute(t, binding)).collect(),
    }
}

/// Grounds `program` over its Herbrand universe truncated at term depth
/// `depth_bound`.
///
/// Instances whose head is deeper than the bound are dropped, as are
/// instances with a body atom outside the base. Programs with function
/// symbols need a bound; without one the universe is infinite.
pub fn ground(program: &Program, depth_bound: Option<usize>) -> Result<GroundProgram, Error> {
    let sig = Signature::of(program);
    let depth = match depth_bound {
        Some(d) => d,
        None if sig.functors.is_empty() => 0,
        None => return Err(Error::GroundingOverflow),
    };
    let universe = sig.universe(depth);

    let mut base_atoms: BTreeSet<Atom> = program.declared_atoms.clone();
    for (pred, arity) in &sig.predicates {
        for args in tuples(&universe, *arity) {
            base_atoms.insert(Atom::new(pred.clone(), args));
        }
    }

    let mut instances: Vec<Clause> = Vec::new();
    for clause in &program.clauses {
        let vars = clause.variables();
        for values in tuples(&universe, vars.len()) {
            let binding: BTreeMap<&str, &Term> = vars.iter().copied().zip(values.iter()).collect();
            let head = substitute_atom(&clause.head, &binding);
            if head.depth() > depth {
                continue;
            }
            let body: Vec<Literal> = clause
                .body
                .iter()
                .map(|l| Literal { positive: l.positive, atom: substitute_atom(&l.atom, &binding) })
                .collect();
            if body.iter().any(|l| !base_atoms.contains(&l.atom)) {
                continue;
            }
            instances.push(Clause { head, body });
        }
    }
    for c in &instances {
        base_atoms.insert(c.head.clone());
    }

    let table = Arc::new(AtomTable::new(base_atoms.iter().cloned()));
    let id = |a: &Atom| table.id_of(a).expect("atom interned");
    let clauses: Vec<GroundClause> = instances
        .iter()
        .map(|c| GroundClause {
            head: id(&c.head),
            body: c
                .body
                .iter()
                .map(|l| GroundLiteral { atom: id(&l.atom), positive: l.positive })
                .collect(),
        })
        .collect();
    let base = table.ids().collect();
    Ok(GroundProgram::from_parts(table.clone(), base, clauses))
}
