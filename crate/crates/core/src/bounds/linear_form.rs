//! The linear form Lambda = alpha k - beta l attached to a cycle with k
//! expanding and l contracting steps, and the bounds it must satisfy.
//!
//! A cycle whose minimum exceeds `x0` pins Lambda into a narrow band
//! around zero (the `laub*` tests below). Independently, transcendence
//! results push |Lambda| away from zero. The interaction of the two is
//! what the crossing and window modules exploit.

use crate::bounds::context::BoundContext;
use crate::error::Result;
use crate::numerics::real::hp_log_u64;
use crate::numerics::PrecReal;

/// alpha k - beta l at the context precision.
pub fn lambda_form(ctx: &BoundContext, k: u64, l: u64) -> PrecReal {
    let kk = PrecReal::from_u64(k, ctx.prec);
    let ll = PrecReal::from_u64(l, ctx.prec);
    ctx.alpha.mul(&kk).sub(&ctx.beta.mul(&ll))
}

/// Float image of the linear form, good to ~1e-9 absolute for the table
/// ranges; used only to skip hopeless pairs quickly.
fn lambda_f64(ctx: &BoundContext, k: u64, l: u64) -> f64 {
    ctx.alpha_f64 * k as f64 - ctx.beta_f64 * l as f64
}

/// |Lambda| < eps k, which every cycle with minimum above x0 satisfies.
pub fn laubk_holds(ctx: &BoundContext, k: u64, l: u64) -> bool {
    let lambda = lambda_form(ctx, k, l).abs();
    let bound = ctx.eps.mul(&PrecReal::from_u64(k, ctx.prec));
    lambda.partial_cmp(&bound) == Some(std::cmp::Ordering::Less)
}

/// The sharper one-sided band in terms of l: a cycle with minimum above
/// x0 has 0 < Lambda < eps l beta/(alpha-eps) when its multiplier exceeds
/// one, and 0 < -Lambda < eps l beta/alpha otherwise.
pub fn laubl_holds(ctx: &BoundContext, k: u64, l: u64) -> bool {
    use std::cmp::Ordering::*;
    let lambda = lambda_form(ctx, k, l);
    let ll = PrecReal::from_u64(l, ctx.prec);
    let scaled_eps = ctx.eps.mul(&ctx.beta).mul(&ll);
    match lambda.partial_cmp(&PrecReal::from_u64(0, ctx.prec)) {
        Some(Greater) => {
            let bound = scaled_eps.div(&ctx.alpha.sub(&ctx.eps));
            lambda.partial_cmp(&bound) == Some(Less)
        }
        Some(Less) => {
            let bound = scaled_eps.div(&ctx.alpha);
            lambda.neg().partial_cmp(&bound) == Some(Less)
        }
        _ => false,
    }
}

/// Nearest integer to rho l, falling back to the exact bracket only when
/// the float image sits suspiciously close to a tie.
fn round_rho(ctx: &BoundContext, l: u64) -> Result<u64> {
    let t = ctx.rho_f64 * l as f64 + 0.5;
    let frac = t - t.floor();
    if !(1e-8..=1.0 - 1e-8).contains(&frac) {
        return ctx.round_rho_times(l);
    }
    Ok(t.floor() as u64)
}

/// All pairs (k, l) with l <= l_max and k within one of rho l that pass
/// the one-sided band, in ascending l order.
pub fn laubl_candidates(ctx: &BoundContext, l_max: u64) -> Result<Vec<(u64, u64)>> {
    laubl_candidates_in(ctx, 1, l_max)
}

/// The same scan restricted to l in [l_from, l_to].
pub fn laubl_candidates_in(ctx: &BoundContext, l_from: u64, l_to: u64) -> Result<Vec<(u64, u64)>> {
    let mut hits = Vec::new();
    let slack = |l: u64| {
        // generous float cover of both one-sided bounds
        1.5 * ctx.eps_f64 * ctx.beta_f64 * l as f64 / (ctx.alpha_f64 - ctx.eps_f64) + 1e-6
    };
    for l in l_from.max(1)..=l_to {
        let k0 = round_rho(ctx, l)?;
        for k in k0.saturating_sub(1)..=k0 + 1 {
            if k == 0 {
                continue;
            }
            if lambda_f64(ctx, k, l).abs() > slack(l) {
                continue;
            }
            if laubl_holds(ctx, k, l) {
                hits.push((k, l));
            }
        }
    }
    Ok(hits)
}

/// ln of the upper bound on |Lambda| for a cycle with at most m maxima
/// and minimum above x0, evaluated at l contracting steps.
///
/// Kept in log space: the bound itself underflows every fixed-exponent
/// format once l is large.
pub fn ublm_ln(ctx: &BoundContext, m: u32, l: u64) -> Result<PrecReal> {
    if m == 0 || l == 0 {
        return Err(crate::error::Error::InvalidParams(
            "the cycle bound needs at least one maximum and one contracting step".into(),
        ));
    }
    let p = ctx.prec;
    let one = PrecReal::from_u64(1, p);
    let chain = ctx.delta1.add(&one);
    let x = chain.pow(&PrecReal::from_u64(u64::from(m) - 1, p));
    let ln_beta1 = x.sub(&one).div(&ctx.delta1).mul(&ctx.ln_gamma1);
    let ln_d = hp_log_u64(ctx.d, 1, p)?;
    let per_max = PrecReal::from_u64(l, p)
        .div(&PrecReal::from_u64(u64::from(m), p))
        .mul(&ln_d);
    let tail = ln_beta1.sub(&per_max).div(&x);
    let ln_l = hp_log_u64(l, 1, p)?;
    let ln_margin = hp_log_u64(ctx.margin(), 1, p)?;
    Ok(ctx
        .beta
        .ln()
        .sub(&ctx.alpha.sub(&ctx.eps).ln())
        .add(&ln_l)
        .add(&one.add(&ctx.eps).ln())
        .add(&ln_margin)
        .add(&tail))
}

/// Float twin of [`ublm_ln`], for the crossing solver.
pub fn ublm_ln_f64(ctx: &BoundContext, m: u32, l: f64) -> f64 {
    debug_assert!(m >= 1 && l > 0.0);
    let chain = ctx.delta1_f64 + 1.0;
    let x = chain.powi(m as i32 - 1);
    let ln_beta1 = (x - 1.0) / ctx.delta1_f64 * ctx.ln_gamma1_f64;
    let tail = (ln_beta1 - l / f64::from(m) * (ctx.d as f64).ln()) / x;
    ctx.beta_f64.ln() - (ctx.alpha_f64 - ctx.eps_f64).ln()
        + l.ln()
        + ctx.eps_f64.ln_1p()
        + (ctx.margin() as f64).ln()
        + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::CANDIDATES_1322;

    fn ctx_1322() -> BoundContext {
        BoundContext::new(1, 3, 2, 2, 1_000_000, 256).unwrap()
    }

    fn ctx_2433() -> BoundContext {
        BoundContext::new(2, 4, 3, 3, 1_000_000, 256).unwrap()
    }

    #[test]
    fn linear_form_value_at_first_candidate() {
        let lambda = lambda_form(&ctx_1322(), 389, 276).to_f64();
        assert!(
            (lambda + 4.3654111e-5).abs() < 1e-11,
            "lambda = {lambda:e}"
        );
    }

    #[test]
    fn candidate_scan_reproduces_leading_pairs_and_count() {
        let ctx = ctx_1322();
        let hits = laubl_candidates(&ctx, 31_240).unwrap();
        assert_eq!(&hits[..8], &CANDIDATES_1322[..]);
        assert_eq!(hits.len(), 4784);
        // every band member also satisfies the coarser k-form bound
        for &(k, l) in &hits[..50] {
            assert!(laubk_holds(&ctx, k, l), "({k}, {l})");
        }
    }

    #[test]
    fn band_rejects_wrong_sign_and_far_pairs() {
        let ctx = ctx_1322();
        assert!(!laubl_holds(&ctx, 390, 276));
        assert!(!laubl_holds(&ctx, 388, 276));
        assert!(!laubl_holds(&ctx, 7, 5));
        let ctx = ctx_2433();
        assert!(laubl_holds(&ctx, 276, 113));
        assert!(!laubl_holds(&ctx, 127, 52));
    }

    #[test]
    fn log_bound_twins_agree() {
        let ctx = ctx_2433();
        for m in [1u32, 2, 5, 10, 50, 100] {
            for l in [2u64, 113, 276, 31_240] {
                let hp = ublm_ln(&ctx, m, l).unwrap().to_f64();
                let fl = ublm_ln_f64(&ctx, m, l as f64);
                assert!(
                    (hp - fl).abs() < 1e-9 * (1.0 + hp.abs()),
                    "m = {m}, l = {l}: {hp} vs {fl}"
                );
            }
        }
    }

    #[test]
    fn log_bound_matches_hand_reduction_for_single_maximum() {
        // at m = 1 the envelope collapses to beta (1+eps) margin l / ((alpha-eps) d^l)
        let ctx = ctx_1322();
        let l = 20u64;
        let direct = (ctx.beta_f64 * (1.0 + ctx.eps_f64) * ctx.margin() as f64 * l as f64
            / (ctx.alpha_f64 - ctx.eps_f64))
            .ln()
            - l as f64 * 2f64.ln();
        let got = ublm_ln(&ctx, 1, l).unwrap().to_f64();
        assert!((got - direct).abs() < 1e-12, "{got} vs {direct}");
    }

    #[test]
    fn exact_rounding_backstop_engages_near_ties() {
        // l = 13226 puts rho l within 2.4e-5 of an integer but far from a
        // half-integer, so both paths must agree
        let ctx = ctx_1322();
        assert_eq!(round_rho(&ctx, 13_226).unwrap(), 18_641);
        assert_eq!(ctx.round_rho_times(13_226).unwrap(), 18_641);
    }
}
