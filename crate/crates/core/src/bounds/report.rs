//! Assembles the per-m exclusion evidence into one verdict.
//!
//! For a hypothetical cycle with at most m maxima and minimum above x0:
//! contracting step counts l <= floor_q are impossible by the convergent
//! floor, l past the cap crossing are impossible because the envelope
//! undercuts alpha/(cap l), and l past the transcendence crossing are
//! impossible outright. What is left is a finite window which is swept
//! pair by pair; a candidate surviving both the one-sided band and the
//! envelope comparison blocks the exclusion and is reported.

use serde::Serialize;

use crate::bounds::context::{BoundContext, RhinParams};
use crate::bounds::crossings::{crossing_cap, crossing_half, crossing_rhin, partial_quotient_cap};
use crate::bounds::floor::min_cycle_floor;
use crate::bounds::linear_form::{lambda_form, laubl_candidates_in, ublm_ln};
use crate::error::Result;

/// Default ceiling on the window sweep; windows beyond this are reported
/// without a verdict.
pub const DEFAULT_SCAN_CAP: u64 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct McycleWindow {
    pub m: u32,
    pub x0: u64,
    /// Contracting step counts up to this are impossible.
    pub floor_q: u64,
    /// Convergent-only threshold (envelope meets alpha/(2l)).
    pub l1: f64,
    /// Everything past this fails the quotient-cap bound.
    pub l2: f64,
    /// Everything past this fails the transcendence bound.
    pub x3: f64,
    pub quotient_cap: u64,
    /// Denominator window the cap was verified over.
    pub cap_verified_to: u64,
    /// Swept range of contracting step counts, inclusive; empty when
    /// `scan_to < scan_from`.
    pub scan_from: u64,
    pub scan_to: u64,
    pub scan_complete: bool,
    /// Pairs passing the one-sided band inside the window.
    pub candidates: Vec<(u64, u64)>,
    /// Candidates also compatible with the envelope.
    pub survivors: Vec<(u64, u64)>,
    /// True when every l >= 1 is ruled out for cycles above x0.
    pub excluded: bool,
}

/// Builds the exclusion evidence for m-maxima cycles above `ctx.x0`.
pub fn mcycle_window(
    ctx: &BoundContext,
    rhin: &RhinParams,
    m: u32,
    scan_cap: u64,
) -> Result<McycleWindow> {
    let floor_q = min_cycle_floor(ctx)?;
    let l1 = crossing_half(ctx, m)?;
    let (cap, verified_to) = partial_quotient_cap(ctx, rhin)?;
    let l2 = crossing_cap(ctx, m, cap)?;
    let x3 = crossing_rhin(ctx, rhin, m)?;

    let scan_from = floor_q + 1;
    let scan_to = l2.min(x3).floor() as u64;
    let mut candidates = Vec::new();
    let mut survivors = Vec::new();
    let scan_complete = scan_to < scan_from || scan_to - scan_from <= scan_cap;
    if scan_complete && scan_to >= scan_from {
        candidates = laubl_candidates_in(ctx, scan_from, scan_to)?;
        for &(k, l) in &candidates {
            let bound = ublm_ln(ctx, m, l)?.exp();
            let lambda = lambda_form(ctx, k, l).abs();
            if lambda.partial_cmp(&bound) == Some(std::cmp::Ordering::Less) {
                survivors.push((k, l));
            }
        }
    }
    let excluded = scan_complete && survivors.is_empty() && x3 <= verified_to as f64;
    Ok(McycleWindow {
        m,
        x0: ctx.x0,
        floor_q,
        l1,
        l2,
        x3,
        quotient_cap: cap,
        cap_verified_to: verified_to,
        scan_from,
        scan_to,
        scan_complete,
        candidates,
        survivors,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_1322() -> BoundContext {
        BoundContext::new(1, 3, 2, 2, 1_000_000, 256).unwrap()
    }

    fn ctx_2433() -> BoundContext {
        BoundContext::new(2, 4, 3, 3, 1_000_000, 256).unwrap()
    }

    #[test]
    fn single_maximum_cycles_are_excluded_above_a_million() {
        // the floor already exceeds both decay crossings, so the window
        // is empty for either family
        for (ctx, floor_q) in [(ctx_1322(), 127), (ctx_2433(), 52)] {
            let rhin = ctx.rhin_params().unwrap();
            let w = mcycle_window(&ctx, &rhin, 1, DEFAULT_SCAN_CAP).unwrap();
            assert_eq!(w.floor_q, floor_q);
            assert!(w.scan_to < w.scan_from, "window should be empty: {w:?}");
            assert!(w.candidates.is_empty());
            assert!(w.excluded, "{w:?}");
        }
    }

    #[test]
    fn double_maximum_cycles_are_excluded_by_an_empty_scan() {
        let ctx = ctx_1322();
        let rhin = ctx.rhin_params().unwrap();
        let w = mcycle_window(&ctx, &rhin, 2, DEFAULT_SCAN_CAP).unwrap();
        // a real window opens between the floor and the cap crossing,
        // but no pair inside it passes the band
        assert!(w.scan_to >= w.scan_from);
        assert!(w.candidates.is_empty(), "{:?}", w.candidates);
        assert!(w.excluded);
    }

    #[test]
    fn triple_maximum_window_reports_its_survivors() {
        let ctx = ctx_1322();
        let rhin = ctx.rhin_params().unwrap();
        let w = mcycle_window(&ctx, &rhin, 3, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(
            w.candidates,
            vec![
                (389, 276),
                (778, 552),
                (957, 679),
                (1167, 828),
                (1346, 955),
                (1377, 977)
            ]
        );
        assert_eq!(
            w.survivors,
            vec![(389, 276), (778, 552), (957, 679), (1167, 828)]
        );
        assert!(!w.excluded);
        assert!(w.scan_complete);
    }

    #[test]
    fn oversized_windows_withhold_the_verdict() {
        let ctx = ctx_1322();
        let rhin = ctx.rhin_params().unwrap();
        let w = mcycle_window(&ctx, &rhin, 10, 1_000).unwrap();
        assert!(!w.scan_complete);
        assert!(!w.excluded);
        assert!(w.candidates.is_empty());
    }
}
