//! Normal logic programs: terms, atoms, clauses, the text parser and the
//! depth-bounded grounder.

mod ground;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use ground::{
    ground, AtomId, AtomSet, AtomTable, GroundClause, GroundLiteral, GroundProgram,
    DEFAULT_CONSTANT,
};
pub use parser::{parse_program, ParseError};

/// A first-order term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    /// Functor applied to at least one argument.
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth: constants and variables are 0, `f(t1..tn)` is one more
    /// than its deepest argument.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Compound(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::Const(_) => {}
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Compound(functor, args) => {
                write!(f, "{functor}(")?;
                write_comma_separated(f, args)?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Self { predicate: predicate.into(), args }
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Self::new(name, Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    /// Sort key used for every user-visible listing: predicate first, then
    /// the rendered argument string.
    pub fn display_key(&self) -> (String, String) {
        let args = self.args.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        (self.predicate.clone(), args)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_comma_separated(f, &self.args)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Self { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Self { positive: false, atom }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn is_definite(&self) -> bool {
        self.body.iter().all(|l| l.positive)
    }

    pub fn is_unit(&self) -> bool {
        self.body.is_empty()
    }

    /// Distinct variables in order of first occurrence (head first).
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.head.args.iter().for_each(|t| t.collect_vars(&mut out));
        for lit in &self.body {
            lit.atom.args.iter().for_each(|t| t.collect_vars(&mut out));
        }
        out
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            write_comma_separated(f, &self.body)?;
        }
        f.write_str(".")
    }
}

/// A parsed, possibly non-ground program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub clauses: Vec<Clause>,
    /// Extra ground vocabulary declared with `#atom`.
    pub declared_atoms: BTreeSet<Atom>,
}

impl Program {
    pub fn is_definite(&self) -> bool {
        self.clauses.iter().all(Clause::is_definite)
    }

    pub fn has_compound_terms(&self) -> bool {
        fn compound(t: &Term) -> bool {
            matches!(t, Term::Compound(..))
        }
        let atom_has = |a: &Atom| a.args.iter().any(compound);
        self.declared_atoms.iter().any(atom_has)
            || self
                .clauses
                .iter()
                .any(|c| atom_has(&c.head) || c.body.iter().any(|l| atom_has(&l.atom)))
    }
}

/// Renders in the concrete syntax accepted by [`parse_program`]: directives
/// first, then clauses in order.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for atom in &self.declared_atoms {
            writeln!(f, "#atom {atom}.")?;
        }
        for clause in &self.clauses {
            writeln!(f, "{clause}")?;
        }
        Ok(())
    }
}

fn write_comma_separated<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}
