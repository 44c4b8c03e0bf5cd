//! Connectivity queries on symmetric semi-algebraic sets.
//!
//! A set `S ⊂ ℝⁿ` cut out by symmetric polynomials of degree at most `d` is
//! studied through its intersection with the Weyl chamber `x_1 <= ... <= x_n`
//! and, further, with the few `d`-dimensional chamber faces on which the
//! minimizers of `p_{d+1}` over Vandermonde fibers live. The deciders in
//! [`engine`] combine exact real-algebraic bookkeeping with a pluggable
//! low-dimensional connectivity oracle.

pub mod algebraic;
pub mod composition;
pub mod engine;
pub mod error;
pub mod graph;
pub mod groebner;
pub mod oracle;
pub mod poly;
pub mod problem;
pub mod rational;
pub mod sympoly;
pub mod verify;
pub mod vandermonde;

pub use error::{Error, Result};
