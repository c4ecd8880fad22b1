//! Constant term sequences `A(n) = ct(P^n * Q) mod p` for Laurent polynomials.
//!
//! The crate builds the digit automaton that generates such a sequence from
//! the base-`p` expansion of `n`, minimizes it, locates the first zero exactly,
//! and evaluates the classical bounds on where that first zero can sit.
//!
//! Module map:
//!
//! * [`numtheory`]: primes and prime-field elements.
//! * [`laurent`]: dense univariate Laurent polynomials over `F_p`, the constant
//!   term and Cartier operators, and the direct-expansion oracle.
//! * [`multivar`]: sparse multivariate Laurent polynomials over `Z`.
//! * [`automaton`]: Moore machines, the constant-term automaton, minimization,
//!   first-zero search and the linear representation.
//! * [`bounds`]: worst-case, conjectured and automaticity-based bounds.
//! * [`search`]: the seeded randomized experiment harness.
//! * [`fixtures`]: published polynomials and machines used for regression.

pub mod automaton;
pub mod bounds;
mod dec;
mod error;
pub mod fixtures;
pub mod laurent;
pub mod multivar;
pub mod numtheory;
pub mod search;

pub use automaton::{
    build_rz, kappa, LinearRepresentation, MooreMachine, RzAutomaton, ShortestZeroOutcome,
};
pub use bounds::{BoundReport, WorstCase};
pub use error::{Error, ParseError, Result};
pub use laurent::LaurentPoly;
pub use multivar::MultiLaurentPoly;
pub use num_bigint::BigUint;
pub use numtheory::{FpElem, Prime};
pub use search::{ExperimentConfig, GeneratedPoly, SweepRow};
