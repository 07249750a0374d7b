//! Crate-wide error type. Every fallible kernel reports which arithmetic
//! precondition broke, so claim checkers can surface exact diagnostics.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inverse requested for a value sharing a factor with the modulus.
    #[error("value {value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    /// A rational was reduced modulo p^e but its denominator is divisible by p.
    #[error("denominator of {value} is divisible by p = {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },

    /// An argument that must be a p-adic integer has negative p-valuation.
    #[error("{value} is not p-integral for p = {p}")]
    NotPIntegral { value: String, p: u64 },

    /// An argument that must be a p-adic unit has nonzero valuation.
    #[error("{value} is not a p-adic unit for p = {p}")]
    NotAUnit { value: String, p: u64 },

    /// A factored residue with negative valuation was collapsed to a plain residue.
    #[error("cannot collapse factored residue with valuation {valuation} < 0")]
    NegativeValuationAtCollapse { valuation: i64 },

    /// Division by the zero element of a residue ring.
    #[error("division by zero in modular arithmetic")]
    DivisionByZero,

    /// A normalization convention cannot be satisfied by any sign/swap choice.
    #[error("normalization convention inapplicable: {0}")]
    ConventionInapplicable(String),

    /// No representation p = x^2 + d*y^2 exists where one was required.
    #[error("no representation p = x^2 + {d}*y^2 for p = {p}")]
    RepresentationMissing { p: u64, d: u64 },

    /// Arguments outside a checker's or kernel's documented domain.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// Claim id not present in the registry.
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),

    /// Malformed textual input (rational literal, report row, CLI value).
    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent evaluation paths disagreed — an implementation bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
