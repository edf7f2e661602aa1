//! Fixed-point semantics of normal logic programs (least, Fitting,
//! well-founded, stable, alternating fixed point, weakly perfect) together
//! with the level mappings that characterize them.
//!
//! ```
//! use lpsem::{operators, syntax::GroundProgram};
//!
//! let g = GroundProgram::parse("s :- q. q :- not p. p :- p. r :- not r.").unwrap();
//! let (model, _trace) = operators::lfp(&g, operators::Operator::Wp);
//! assert_eq!(g.names(model.true_set()), ["q", "s"]);
//! assert_eq!(g.names(model.false_set()), ["p"]);
//! ```

pub mod cli;
pub mod interp;
pub mod levelmaps;
pub mod operators;
pub mod properties;
pub mod random;
pub mod stable;
pub mod strata;
pub mod syntax;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),
    #[error("grounding overflow: program has function symbols but no depth bound")]
    GroundingOverflow,
    #[error("cap exceeded: {size} atoms, cap is {cap}")]
    CapExceeded { cap: usize, size: usize },
    #[error("program is not definite")]
    NotDefinite,
    #[error("inconsistent interpretation: `{0}` is both true and false")]
    Inconsistent(String),
    #[error("interpretation is not total: `{0}` is undefined")]
    NotTotal(String),
    #[error("level mapping domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("not a stable model")]
    NotStable,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
