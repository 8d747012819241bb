//! Exact arithmetic for finite subschemes of the smooth quadric surface
//! P1 x P1.
//!
//! The library has two halves that check each other:
//!
//! - closed-form counting: partition enumeration, bipartition counts,
//!   Euler products, and the Euler characteristics of Brill-Noether strata
//!   and flag Hilbert schemes ([`partition`], [`series`], [`bn`], [`flag`],
//!   [`tables`]);
//! - an independent oracle that builds explicit finite subschemes from
//!   combinatorial data and computes sheaf cohomology dimensions by exact
//!   rational linear algebra ([`linalg`], [`oracle`]).
//!
//! Everything is integer or rational arithmetic; there is no floating
//! point anywhere.

pub mod bn;
pub mod flag;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod series;
pub mod tables;

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A partition or profile string violated its invariant.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A parameter was outside the range an operation is defined on.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A computation was requested outside the hypotheses that make its
    /// formula valid.
    #[error("requires {0}")]
    Hypothesis(String),

    /// A denominator is divisible by the chosen prime, so the matrix
    /// cannot be reduced modulo it.
    #[error("denominator not invertible modulo {0}")]
    BadPrime(u64),

    /// The staircase reduction of a local ideal is inconsistent with the
    /// declared profile. This indicates a construction bug, never valid
    /// input.
    #[error("colength mismatch for profile {profile:?}: {detail}")]
    Colength { profile: Vec<u32>, detail: String },

    /// Two punctual components were placed at the same support point.
    #[error("duplicate support point ({0}, {1})")]
    DuplicateSupport(String, String),

    /// Golden table data is missing or malformed.
    #[error("golden data: {0}")]
    Golden(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
