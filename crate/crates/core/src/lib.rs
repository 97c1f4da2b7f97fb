//! Verified numerics for counting zeros of Dirichlet L-functions.
//!
//! The crate provides outward-rounded interval arithmetic, rigorous special
//! functions, exact Dirichlet character tables, certified L-function
//! evaluation with argument-principle zero counting, and the explicit
//! zero-counting bounds themselves, together with a branch-and-bound prover
//! that emits machine-checkable certificates.

pub mod bound;
pub mod characters;
pub mod complex;
pub mod error;
pub mod interval;
pub mod lfunc;
pub mod prover;
pub mod special;

pub use complex::ComplexInterval;
pub use error::{Error, Result};
pub use interval::Interval;
pub use prover::{IntervalBox, ProofOutcome, ProofStatus};
