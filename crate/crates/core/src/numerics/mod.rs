//! High-precision building blocks: multi-precision reals, interval
//! continued-fraction expansion, and a log-space crossover solver.

pub mod cf;
pub mod crossover;
pub mod real;

pub use cf::{cf_expand, cf_expand_with_retry, max_partial_quotient, Convergent};
pub use crossover::solve_crossover;
pub use real::{hp_log, PrecReal};
