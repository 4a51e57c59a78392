//! Exact coefficient arithmetic.
//!
//! Polynomials live in variables `u_c`, one per parameter class, with
//! `q_c = u_c^2`. Rational functions appear only where a Poincaré
//! polynomial ends up in a denominator.

mod frac;
mod laurent;
mod parse;
mod rational;
mod shifted;

pub use frac::Frac;
pub use laurent::{LaurentPoly, Mono, Vars, MAX_VARS};
pub use parse::{parse_frac, parse_laurent};
pub use rational::Rational;
pub use shifted::ShiftedPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("variable lists differ: {0}")]
    VariableMismatch(String),
    #[error("missing variable: {0}")]
    MissingVariable(String),
    #[error("needs-half-powers: {0}")]
    NeedsHalfPowers(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}
