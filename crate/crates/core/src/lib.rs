//! Exact computation of super Catalan numbers `S(m, n)` together with
//! executable verification of their lattice-path interpretations.
//!
//! The crate has three layers:
//!
//! * [`exact`] evaluates the closed formulas and the two alternating-sum
//!   identities in arbitrary precision;
//! * [`lattice`], [`involution`], [`interp`] and [`census`] realize the
//!   path-counting side: monotone lattice paths, the nine diagonal
//!   segments `L1..L9`, the step-swapping involution, the reflection
//!   injections, and a transfer-style DP that counts paths by feature
//!   vector without enumerating them;
//! * [`verify`] runs campaigns that compare every route against the
//!   direct formula and emits machine-readable reports, and [`render`]
//!   draws the segment configurations as deterministic SVG.

pub mod census;
mod error;
pub mod exact;
pub mod interp;
pub mod involution;
pub mod lattice;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{BigNat, SignedBig};

/// Default cap on the number of paths an exhaustive enumeration may visit.
///
/// Counting jobs refuse to start (with [`Error::BudgetExceeded`]) rather
/// than run unbounded when the path space is larger than this.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 31;
