//! Exact computations around symplectic capacities.
//!
//! * [`exact`]: rationals and extended rationals.
//! * [`ech`]: sorted lattice sums `𝒩ⁿⱼ(a)`, i.e. ECH capacity sequences of
//!   ellipsoids.
//! * [`ellipsoid`]: ellipsoid records and the ECH embedding-factor oracle.
//! * [`partitions`]: partition enumeration, feasible-scale optimization and
//!   the I-collection test.
//! * [`shells`]: boundary helicities of scaled starshaped shells and the
//!   capacity-separation bound they give.
//! * [`order`]: order capacities, monotonization and monotone generation on
//!   finite scalable preorders.
//! * [`kink`]: the embedding-capacity curve of nested ellipsoids and its
//!   one-sided derivatives.
//! * [`selftest`]: the acceptance checks, runnable from tests or the CLI.
//!
//! Capacities are measured in units of π throughout.

// Errors carry the offending exact values, which are not small.
#![allow(clippy::result_large_err)]

pub mod ech;
pub mod ellipsoid;
pub mod exact;
pub mod kink;
pub mod order;
pub mod partitions;
pub mod selftest;
pub mod shells;

pub use exact::{ExtRat, Rat};
