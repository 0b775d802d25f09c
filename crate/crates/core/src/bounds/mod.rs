//! Diophantine machinery bounding cycles that a finite census cannot see.
//!
//! A cycle of the permutation whose minimum exceeds the verified bound x0
//! ties the logarithms of its branch ratios into a small linear form.
//! Continued-fraction floors push the form away from zero from below,
//! transcendence measures push from above, and between them whole ranges
//! of cycle shapes become impossible. This module computes those ranges.

pub mod context;
pub mod crossings;
pub mod floor;
pub mod linear_form;
pub mod report;

pub use context::{two_log_decompose, BoundContext, RhinParams};
pub use crossings::{
    crossing_cap, crossing_half, crossing_rhin, partial_quotient_cap, threshold_row, ThresholdRow,
};
pub use floor::min_cycle_floor;
pub use linear_form::{
    lambda_form, laubk_holds, laubl_candidates, laubl_candidates_in, laubl_holds, ublm_ln,
    ublm_ln_f64,
};
pub use report::{mcycle_window, McycleWindow, DEFAULT_SCAN_CAP};
