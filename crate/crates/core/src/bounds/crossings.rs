//! Threshold lengths where the cycle bound envelope meets the diophantine
//! floor curves.
//!
//! Three curves matter for a cycle with at most m maxima above x0, all
//! functions of the contracting step count l:
//!
//! - `crossing_half`: past this l, the envelope drops below alpha/(2l),
//!   so k/l must be a continued-fraction convergent of rho.
//! - `crossing_cap`: past this l, the envelope drops below
//!   alpha/(cap l) where cap exceeds every partial quotient by two, which
//!   no pair (k, l) at all can satisfy.
//! - `crossing_rhin`: past this l, the envelope drops below the
//!   transcendence lower bound, again impossible.

use num_bigint::BigUint;

use crate::bounds::context::{BoundContext, RhinParams};
use crate::bounds::linear_form::ublm_ln_f64;
use crate::error::{Error, Result};
use crate::numerics::real::hp_log_u64;
use crate::numerics::{cf_expand_with_retry, max_partial_quotient, solve_crossover};
use num_traits::ToPrimitive;

/// Envelope against alpha/(2 l).
pub fn crossing_half(ctx: &BoundContext, m: u32) -> Result<f64> {
    crossing_reciprocal(ctx, m, 2)
}

/// Envelope against alpha/(cap l).
pub fn crossing_cap(ctx: &BoundContext, m: u32, cap: u64) -> Result<f64> {
    crossing_reciprocal(ctx, m, cap)
}

fn crossing_reciprocal(ctx: &BoundContext, m: u32, divisor: u64) -> Result<f64> {
    let ln_scale = ctx.alpha_f64.ln() - (divisor as f64).ln();
    solve_crossover(
        |l| ublm_ln_f64(ctx, m, l),
        move |l| ln_scale - l.ln(),
        1.0,
    )
}

/// Envelope against the transcendence lower bound.
pub fn crossing_rhin(ctx: &BoundContext, rhin: &RhinParams, m: u32) -> Result<f64> {
    solve_crossover(
        |l| ublm_ln_f64(ctx, m, l),
        |l| rhin.ln_lower_bound(l),
        1.0,
    )
}

/// The partial-quotient cap and the denominator window it was verified
/// over.
///
/// The window is anchored at the m = 20 transcendence crossing: every
/// rho-convergent with denominator below that point is expanded and the
/// largest partial quotient among them, plus two, caps
/// (q_n + q_{n+1}) / q_n for the whole window.
pub fn partial_quotient_cap(ctx: &BoundContext, rhin: &RhinParams) -> Result<(u64, u64)> {
    let window = crossing_rhin(ctx, rhin, 20)?;
    if !window.is_finite() || window < 2.0 {
        return Err(Error::NoCrossing(
            "degenerate verification window for the quotient cap".into(),
        ));
    }
    let q_limit = BigUint::from(window as u64);
    let (b, d, cd, ab) = (ctx.b, ctx.d, ctx.cd(), ctx.ab());
    let convergents = cf_expand_with_retry(
        |bits| Ok(hp_log_u64(b, d, bits)?.div(&hp_log_u64(cd, ab, bits)?)),
        &q_limit,
        ctx.prec,
        1 << 16,
    )?;
    let mpq = max_partial_quotient(&convergents, &q_limit)
        .and_then(|a| a.to_u64())
        .ok_or_else(|| Error::ResourceLimit("partial quotient exceeds the u64 range".into()))?;
    Ok((mpq + 2, window as u64))
}

/// One row of the threshold tables.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ThresholdRow {
    pub m: u32,
    pub l1: f64,
    pub l2: f64,
    pub x3: f64,
}

/// Computes (l1, l2, x3) for one m, reusing a precomputed cap.
pub fn threshold_row(
    ctx: &BoundContext,
    rhin: &RhinParams,
    cap: u64,
    m: u32,
) -> Result<ThresholdRow> {
    Ok(ThresholdRow {
        m,
        l1: crossing_half(ctx, m)?,
        l2: crossing_cap(ctx, m, cap)?,
        x3: crossing_rhin(ctx, rhin, m)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{L1L2_1322, L1L2_2433, X3_1322, X3_2433, MAX_PARTIAL_QUOTIENT};

    fn ctx_1322() -> BoundContext {
        BoundContext::new(1, 3, 2, 2, 1_000_000, 256).unwrap()
    }

    fn ctx_2433() -> BoundContext {
        BoundContext::new(2, 4, 3, 3, 1_000_000, 256).unwrap()
    }

    #[test]
    fn transcendence_crossings_match_reference_rows() {
        for (ctx, rows) in [(ctx_1322(), &X3_1322), (ctx_2433(), &X3_2433)] {
            let rhin = ctx.rhin_params().unwrap();
            for &(m, want, tol) in rows.iter() {
                let got = crossing_rhin(&ctx, &rhin, m).unwrap();
                assert!(
                    tol.check(got, want),
                    "x3(m = {m}) for ({},{},{},{}): got {got}, want {want}",
                    ctx.a,
                    ctx.b,
                    ctx.c,
                    ctx.d
                );
            }
        }
    }

    #[test]
    fn quotient_cap_pipeline_lands_on_57_for_both_families() {
        for ctx in [ctx_1322(), ctx_2433()] {
            let rhin = ctx.rhin_params().unwrap();
            let (cap, window) = partial_quotient_cap(&ctx, &rhin).unwrap();
            assert_eq!(cap, MAX_PARTIAL_QUOTIENT + 2);
            assert!(window > 1_000_000_000, "window only reached {window}");
        }
    }

    #[test]
    fn reciprocal_crossings_match_reference_rows() {
        for (ctx, rows) in [(ctx_1322(), &L1L2_1322), (ctx_2433(), &L1L2_2433)] {
            let rhin = ctx.rhin_params().unwrap();
            let (cap, _) = partial_quotient_cap(&ctx, &rhin).unwrap();
            for &(m, want_l1, want_l2, tol) in rows.iter() {
                let row = threshold_row(&ctx, &rhin, cap, m).unwrap();
                assert!(
                    tol.check(row.l1, want_l1),
                    "l1(m = {m}): got {}, want {want_l1}",
                    row.l1
                );
                assert!(
                    tol.check(row.l2, want_l2),
                    "l2(m = {m}): got {}, want {want_l2}",
                    row.l2
                );
            }
        }
    }

    #[test]
    fn published_additive_constant_shifts_the_crossing_left() {
        // a smaller additive constant strengthens the lower bound, so it
        // meets the falling envelope at a smaller l
        let ctx = ctx_2433();
        let strict = ctx.rhin_params().unwrap();
        let published = RhinParams::with_c_add(1.77);
        let x_strict = crossing_rhin(&ctx, &strict, 3).unwrap();
        let x_published = crossing_rhin(&ctx, &published, 3).unwrap();
        assert!(
            x_published < x_strict,
            "{x_published} should fall below {x_strict}"
        );
    }
}
