//! Residue-class permutations of the natural numbers.
//!
//! This crate builds bijections of ℕ₀ that act linearly on residue classes
//! (the prototype maps 2n -> 3n, 4n+1 -> 3n+1, 4n+3 -> 3n+2), iterates them
//! to find cycles and apparently divergent trajectories, and derives
//! diophantine lower bounds that rule out cycles with few local maxima over
//! large ranges of cycle lengths.
//!
//! Module map:
//! - [`nat`]: natural-number element type with bignum promotion.
//! - [`numerics`]: high-precision reals, continued fractions, root finding.
//! - [`perm`]: permutation construction, validation and generalization.
//! - [`dynamics`]: single-trajectory iteration and cycle classification.
//! - [`census`]: exhaustive sweeps over seed ranges.
//! - [`bounds`]: cycle-exclusion machinery built on linear-form estimates.
//! - [`tables`]: reference values used by the reproduction commands.

pub mod bounds;
pub mod census;
pub mod dynamics;
mod error;
mod nat;
pub mod numerics;
pub mod perm;
pub mod tables;

pub use error::{Error, Result};
pub use nat::Nat;
