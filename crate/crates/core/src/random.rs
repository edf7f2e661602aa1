//! Seeded random propositional programs for fuzzing.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Atom, Clause, Literal, Program};

/// Name of the `k`-th generated atom: `a`..`z`, then `x26`, `x27`, ...
pub fn atom_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("x{k}")
    }
}

/// A propositional program over `num_atoms` declared atoms with
/// `num_clauses` clauses. Heads are uniform; each body has up to `max_body`
/// distinct literals, each negative with probability `neg_prob`. The same
/// arguments always give the same program.
pub fn generate_random_program(
    num_atoms: usize,
    num_clauses: usize,
    max_body: usize,
    neg_prob: f64,
    seed: u64,
) -> Program {
    assert!(num_atoms >= 1, "need at least one atom");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<Atom> = (0..num_atoms).map(|k| Atom::prop(atom_name(k))).collect();
    let neg_prob = neg_prob.clamp(0.0, 1.0);
    let clauses = (0..num_clauses)
        .map(|_| {
            let head = atoms[rng.random_range(0..num_atoms)].clone();
            let len = rng.random_range(0..=max_body);
            let mut seen = BTreeSet::new();
            let mut body = Vec::new();
            for _ in 0..len {
                let atom = rng.random_range(0..num_atoms);
                let positive = !rng.random_bool(neg_prob);
                if seen.insert((atom, positive)) {
                    body.push(Literal { positive, atom: atoms[atom].clone() });
                }
            }
            Clause { head, body }
        })
        .collect();
    Program { clauses, declared_atoms: atoms.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_random_program(3, 4, 2, 0.5, 42);
        let b = generate_random_program(3, 4, 2, 0.5, 42);
        assert_eq!(a, b);
        assert_eq!(a.clauses.len(), 4);
        assert_ne!(a, generate_random_program(3, 4, 2, 0.5, 43));
    }

    #[test]
    fn empty_program() {
        let p = generate_random_program(1, 0, 0, 0.0, 0);
        assert!(p.clauses.is_empty());
        assert_eq!(p.declared_atoms.len(), 1);
    }

    #[test]
    fn definite_without_negation() {
        for seed in 0..50 {
            assert!(generate_random_program(5, 6, 3, 0.0, seed).is_definite());
        }
    }

    #[test]
    fn names() {
        assert_eq!(atom_name(0), "a");
        assert_eq!(atom_name(25), "z");
        assert_eq!(atom_name(26), "x26");
    }
}
