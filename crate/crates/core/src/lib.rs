//! Generation, validation, and exact-geometry checking of SAT instances that
//! encode "n points in general position with no convex k-gon".
//!
//! The instance family is built from three clause blocks over triple
//! orientation variables and per-4-set pattern selectors, plus optional unit
//! blocks that anchor a convex-layer structure:
//!
//! - [`cc5`]: 5-point orientation implication clauses (CC axiom 5 style),
//! - [`fourset`]: selector reification over the 14 realizable cyclic
//!   orientation patterns of a 4-set,
//! - [`exclusion`]: one long clause per k-set forcing some 4-subset to be
//!   non-convex,
//! - [`hull`]: unit clauses for convex-layer templates and wedge sub-cubes,
//! - [`assembly`]: global variable numbering, streaming DIMACS emission, and
//!   the per-block count manifest,
//! - [`geometry`]: exact integer-arithmetic ground truth (orientation
//!   predicates, convex-position tests, induced assignments, witness
//!   verification).

pub mod assembly;
pub mod cc5;
pub mod combinatorics;
mod error;
pub mod exclusion;
pub mod fourset;
pub mod geometry;
pub mod hull;
pub mod orientation;
pub mod params;

pub use error::Error;
pub use params::{Cc5Mode, EncodingParams};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
