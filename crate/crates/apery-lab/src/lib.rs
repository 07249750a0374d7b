//! Exact-arithmetic toolkit for verifying congruences satisfied by Apéry
//! polynomials, Delannoy polynomials, central binomial sums, and their
//! relatives.
//!
//! Everything is computed with arbitrary-precision integers and rationals —
//! no floating point, no fixed-width shortcuts. Modular values live in
//! prime-power rings `Z/p^e` (odd `p`, `e <= 6`); a factored representation
//! tracks powers of `p` separately so products and quotients of p-divisible
//! terms lose no precision. Each congruence family is registered as a claim
//! that can be checked at a point, swept over a prime range, and reported as
//! machine-readable JSONL/CSV rows.

pub mod arith;
pub mod claims;
pub mod cli;
pub mod error;
pub mod quadform;
pub mod report;
pub mod sequences;
pub mod specials;

pub use error::{Error, Result};
