//! Lower bound on the contracting step count of any cycle whose minimum
//! exceeds x0.
//!
//! For a cycle above x0 the linear form satisfies both |Lambda| < eps k
//! and |Lambda| >= alpha / (q_n + q_{n+1}) whenever l < q_{n+1}, where
//! the q are convergent denominators of rho. Whenever
//! q_n (q_n + q_{n+1}) <= alpha (alpha - eps) / (beta eps) the two are
//! incompatible for l <= q_n, so l must exceed q_n. The function reports
//! the largest denominator certified this way.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::bounds::context::BoundContext;
use crate::error::{Error, Result};
use crate::numerics::real::hp_log_u64;
use crate::numerics::{cf_expand_with_retry, PrecReal};

/// Largest convergent denominator q >= 2 of rho with
/// q_n (q_n + q_{n+1}) below the incompatibility threshold; the first
/// inspected denominator when even it fails the test.
pub fn min_cycle_floor(ctx: &BoundContext) -> Result<u64> {
    // alpha (alpha - eps) / (beta eps), written with the eps definition
    // expanded so the x0 dependence is explicit
    let num = PrecReal::from_u64(ctx.x0 - ctx.ab() + ctx.a + 1, ctx.prec);
    let den = PrecReal::from_u64(ctx.margin(), ctx.prec);
    let rhs = ctx
        .alpha
        .mul(&ctx.alpha.sub(&ctx.eps))
        .div(&ctx.beta)
        .mul(&num.div(&den));
    let (rhs_lo, rhs_hi) = rhs.to_rational_enclosure(4)?;

    // only q_n < sqrt(rhs) can pass, but the successor of the last such
    // denominator is needed, so expand one step past the square root
    let rhs_ceil = rhs_hi.ceil().to_integer().to_biguint().unwrap_or_default();
    let q_limit = rhs_ceil.sqrt() + 2u32;
    let b = ctx.b;
    let d = ctx.d;
    let cd = ctx.cd();
    let ab = ctx.ab();
    let prec = ctx.prec;
    let convergents = cf_expand_with_retry(
        |bits| Ok(hp_log_u64(b, d, bits)?.div(&hp_log_u64(cd, ab, bits)?)),
        &q_limit,
        prec,
        1 << 16,
    )?;

    let mut floor_q: Option<u64> = None;
    let mut first_scanned: Option<u64> = None;
    for pair in convergents.windows(2) {
        let q = &pair[0].q;
        let q_next = &pair[1].q;
        if q < &BigInt::from(2) {
            continue;
        }
        let qv = q.to_u64().ok_or_else(|| {
            Error::ResourceLimit("convergent denominator exceeds the u64 range".into())
        })?;
        first_scanned.get_or_insert(qv);
        let product = BigRational::from_integer(q * (q + q_next));
        if product <= rhs_lo {
            floor_q = Some(qv);
        } else if product < rhs_hi {
            return Err(Error::PrecisionExhausted(format!(
                "floor threshold is ambiguous at {prec} bits near q = {qv}"
            )));
        }
    }
    floor_q
        .or(first_scanned)
        .ok_or_else(|| Error::PrecisionExhausted("no scannable convergent pair".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{FLOOR_1322, FLOOR_2433};

    #[test]
    fn contracting_step_floor_matches_reference_rows() {
        for &(exp, want) in FLOOR_1322.iter() {
            let ctx = BoundContext::new(1, 3, 2, 2, 10u64.pow(exp), 256).unwrap();
            assert_eq!(min_cycle_floor(&ctx).unwrap(), want, "1322 at 10^{exp}");
        }
        for &(exp, want) in FLOOR_2433.iter() {
            let ctx = BoundContext::new(2, 4, 3, 3, 10u64.pow(exp), 256).unwrap();
            assert_eq!(min_cycle_floor(&ctx).unwrap(), want, "2433 at 10^{exp}");
        }
    }

    #[test]
    fn floor_is_monotone_in_x0() {
        let mut prev = 0;
        for exp in 3..=12 {
            let ctx = BoundContext::new(1, 3, 2, 2, 10u64.pow(exp), 256).unwrap();
            let q = min_cycle_floor(&ctx).unwrap();
            assert!(q >= prev, "floor dropped to {q} at 10^{exp}");
            prev = q;
        }
    }
}
