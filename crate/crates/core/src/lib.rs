//! Scattered-subword counting, Parikh matrices and M-equivalence for linear
//! and circular words, with exact rational arithmetic throughout.

pub mod circular;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod rational;
pub mod rewriting;
pub mod suites;
pub mod words;

pub use circular::{canonicalize, CircularWord};
pub use error::{Error, Result};
pub use matrix::UnitriangularMatrix;
pub use rational::Rational;
pub use words::{Alphabet, ParikhVector, Symbol, Word};
