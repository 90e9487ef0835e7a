//! Weighted discrete Hardy, Copson, Rellich and Knopp inequalities on the
//! half-line.
//!
//! The crate provides the difference operators, the improved weight
//! sequences, the remainder-operator factorizations that turn each inequality
//! into an exact identity, and executable checks of all of them in
//! multiple-precision arithmetic.

pub mod complex;
pub mod error;
pub mod factorization;
pub mod operators;
pub mod precision;
pub mod sequences;
pub mod verification;
pub mod weights;

pub use complex::Complex;
pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use sequences::{FiniteSequence, PositiveSequence};
