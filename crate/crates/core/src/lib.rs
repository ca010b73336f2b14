//! Exact-arithmetic computation of the Gromov width of generalized Bott
//! manifolds from their moment-polytope data.
//!
//! Everything on the computation path is exact: scalars are
//! arbitrary-precision rationals, polytopes are half-space systems with
//! primitive integer normals, and all certificates (embedded simplices,
//! distorted cross-polytopes, integer-program witnesses, Cremona
//! reductions) are verified with exact comparisons. Floating point shows
//! up only in human-readable report output.
//!
//! Module map:
//! - [`lattice`]: rational/integer linear algebra primitives.
//! - [`polytope`]: half-space lattice polytopes (vertices, Delzant test,
//!   exact volume, volume bound).
//! - [`bott`]: generalized Bott towers, their fans and moment polytopes.
//! - [`width`]: the width formula, embedded-simplex certificates and the
//!   admissible-chain audit trail.
//! - [`bounds`]: integer-program upper bounds and distorted-cross-polytope
//!   lower-bound verification.
//! - [`intersect`]: divisor/curve intersection numbers for polytope edges.
//! - [`cremona`]: dimension-4 ball capacities via Cremona moves.
//! - [`formats`]: the on-disk JSON schemas for towers, polytopes,
//!   certificates and cross-polytope specs.

pub mod bott;
pub mod bounds;
pub mod cremona;
pub mod formats;
pub mod intersect;
pub mod lattice;
pub mod polytope;
pub mod width;

use thiserror::Error;

/// Errors shared across the library.
///
/// Callers that need exit-code semantics: everything except
/// [`Error::NoWitnessUnderCap`] and [`Error::ThresholdNotRational`]
/// indicates invalid input; those two indicate an honest "search budget
/// exhausted" outcome.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("no primitive part: zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("redundant inequality {0}")]
    RedundantInequality(usize),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("not combinatorially a product of simplices: {0}")]
    NotProductOfSimplices(String),
    #[error("requires standard form: offset for facet ({block},{k}) is nonzero")]
    RequiresStandardForm { block: usize, k: usize },
    #[error("block already closed: u({0}) = 0")]
    BlockAlreadyClosed(usize),
    #[error("not an edge: {0}")]
    NotAnEdge(String),
    #[error("u({0}) != 0")]
    BlockNotClosed(usize),
    #[error("no witness under cap {cap}")]
    NoWitnessUnderCap { cap: u64 },
    #[error("Cremona move cap of {0} iterations exceeded")]
    MoveCapExceeded(u64),
    #[error("threshold not rational under bound {bound}: bracketed by [{lo}, {hi}]")]
    ThresholdNotRational { bound: u64, lo: String, hi: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
