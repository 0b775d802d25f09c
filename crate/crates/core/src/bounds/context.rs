//! Shared constants for the cycle-length bound machinery.
//!
//! Everything downstream (linear forms, floors, crossings) needs the same
//! handful of logarithms and the eviction threshold `eps`. They are
//! computed once here, at high precision with float mirrors, for a given
//! permutation family and search bound `x0`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numerics::real::hp_log_u64;
use crate::numerics::PrecReal;
use crate::perm::make_pabcd;

/// Precomputed constants for P(a,b,c,d) with verified elements up to `x0`.
///
/// Requires the expanding orientation `b > d` (equivalently `cd > ab`),
/// and an `x0` large enough that `eps < alpha`; the bound lemmas are
/// vacuous otherwise.
pub struct BoundContext {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub x0: u64,
    pub prec: usize,
    /// ln(cd/ab), the log step ratio of the expanding branches.
    pub alpha: PrecReal,
    /// ln(b/d), the log step ratio of the contracting branch.
    pub beta: PrecReal,
    /// beta / alpha, the limiting ratio of expanding to contracting steps.
    pub rho: PrecReal,
    /// (ab-a-1) / (x0-ab+a+1), the linear-form slack per expanding step.
    pub eps: PrecReal,
    /// log_d(b) + 1, the growth exponent between consecutive maxima.
    pub delta1: PrecReal,
    /// ln(ab/cd + alpha1/x0^(delta1+1)), the per-chain contraction factor.
    pub ln_gamma1: PrecReal,
    pub alpha_f64: f64,
    pub beta_f64: f64,
    pub rho_f64: f64,
    pub eps_f64: f64,
    pub delta1_f64: f64,
    pub ln_gamma1_f64: f64,
    rho_enclosure: (BigRational, BigRational),
}

impl BoundContext {
    pub fn new(a: u64, b: u64, c: u64, d: u64, x0: u64, prec: usize) -> Result<Self> {
        // reuse the permutation validation for the family constraints
        make_pabcd(a, b, c, d)?;
        if b <= d {
            return Err(Error::InvalidParams(format!(
                "bounds need the expanding orientation b > d, got b = {b}, d = {d}"
            )));
        }
        let ab = a * b;
        let cd = c * d;
        debug_assert!(cd > ab, "b > d forces cd > ab when a(b-1) = c(d-1)");
        let margin = ab - a - 1;
        if margin == 0 {
            return Err(Error::InvalidParams(
                "degenerate family: ab - a - 1 vanishes".into(),
            ));
        }
        if x0 <= ab {
            return Err(Error::InvalidParams(format!(
                "x0 = {x0} must exceed ab = {ab}"
            )));
        }

        let alpha = hp_log_u64(cd, ab, prec)?;
        let beta = hp_log_u64(b, d, prec)?;
        let rho = beta.div(&alpha);
        let eps = PrecReal::from_ratio(&BigUint::from(margin), &BigUint::from(x0 - ab + a + 1), prec)?;
        if eps.partial_cmp(&alpha) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidParams(format!(
                "x0 = {x0} is too small: eps = {} is not below alpha = {}",
                eps.to_f64(),
                alpha.to_f64()
            )));
        }
        let ln_b = hp_log_u64(b, 1, prec)?;
        let ln_d = hp_log_u64(d, 1, prec)?;
        let one = PrecReal::from_u64(1, prec);
        let delta1 = ln_b.div(&ln_d).add(&one);
        // gamma1 = ab/cd + alpha1 / x0^(delta1 + 1) with alpha1 = ab-a-1-ab/cd
        let ab_over_cd = PrecReal::from_ratio(&BigUint::from(ab), &BigUint::from(cd), prec)?;
        let alpha1 = PrecReal::from_u64(margin, prec).sub(&ab_over_cd);
        let ln_x0 = hp_log_u64(x0, 1, prec)?;
        let decay = delta1.add(&one).mul(&ln_x0).neg().exp();
        let gamma1 = ab_over_cd.add(&alpha1.mul(&decay));
        let ln_gamma1 = gamma1.ln();

        let rho_enclosure = rho.to_rational_enclosure(4)?;
        Ok(BoundContext {
            a,
            b,
            c,
            d,
            x0,
            prec,
            alpha_f64: alpha.to_f64(),
            beta_f64: beta.to_f64(),
            rho_f64: rho.to_f64(),
            eps_f64: eps.to_f64(),
            delta1_f64: delta1.to_f64(),
            ln_gamma1_f64: ln_gamma1.to_f64(),
            alpha,
            beta,
            rho,
            eps,
            delta1,
            ln_gamma1,
            rho_enclosure,
        })
    }

    pub fn ab(&self) -> u64 {
        self.a * self.b
    }

    pub fn cd(&self) -> u64 {
        self.c * self.d
    }

    /// ab - a - 1, the numerator of `eps`.
    pub fn margin(&self) -> u64 {
        self.ab() - self.a - 1
    }

    /// Exact rational bracket around rho, a few last-place units wide.
    pub fn rho_enclosure(&self) -> &(BigRational, BigRational) {
        &self.rho_enclosure
    }

    /// Nearest integer to rho * l, resolved through the exact bracket.
    pub fn round_rho_times(&self, l: u64) -> Result<u64> {
        let (lo, hi) = &self.rho_enclosure;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let l = BigRational::from_integer(BigInt::from(l));
        let f_lo = (lo * &l + &half).floor().to_integer();
        let f_hi = (hi * &l + &half).floor().to_integer();
        if f_lo != f_hi {
            return Err(Error::PrecisionExhausted(format!(
                "rho * {l} sits too close to a half-integer at {} bits",
                self.prec
            )));
        }
        u64::try_from(f_lo).map_err(|_| {
            Error::ResourceLimit("rounded rho multiple exceeds the u64 range".into())
        })
    }

    /// Transcendence-bound parameters for this family, when its two log
    /// ratios decompose over ln 2 and ln 3.
    pub fn rhin_params(&self) -> Result<RhinParams> {
        let (p, q) = two_log_decompose(self.cd(), self.ab()).ok_or_else(|| {
            Error::InvalidParams(format!(
                "cd/ab = {}/{} is not a ratio of powers of 2 and 3",
                self.cd(),
                self.ab()
            ))
        })?;
        let (r, s) = two_log_decompose(self.b, self.d).ok_or_else(|| {
            Error::InvalidParams(format!(
                "b/d = {}/{} is not a ratio of powers of 2 and 3",
                self.b, self.d
            ))
        })?;
        let am_eps = self.alpha_f64 - self.eps_f64;
        let height = |u: i64, v: i64| {
            ((u.unsigned_abs() as f64) * self.beta_f64 + (v.unsigned_abs() as f64) * am_eps)
                / am_eps
        };
        let c1 = height(p, r);
        let c2 = height(q, s);
        Ok(RhinParams {
            c_mult: RhinParams::C_MULT,
            c_add: c1.max(c2).ln(),
        })
    }
}

/// Coefficients of the lower bound |Lambda| > exp(-c_mult (c_add + ln l))
/// for the linear form of an l-step cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhinParams {
    pub c_mult: f64,
    pub c_add: f64,
}

impl RhinParams {
    /// Exponent of the effective irrationality measure of ln2 / ln3.
    pub const C_MULT: f64 = 13.3;

    /// Overrides the additive constant, e.g. to quote a published value.
    pub fn with_c_add(c_add: f64) -> Self {
        RhinParams {
            c_mult: Self::C_MULT,
            c_add,
        }
    }

    /// ln of the lower bound on |Lambda| at l contracting steps.
    pub fn ln_lower_bound(&self, l: f64) -> f64 {
        -self.c_mult * (self.c_add + l.ln())
    }
}

/// Writes num/den as 2^i * 3^j if possible, after reduction.
pub fn two_log_decompose(num: u64, den: u64) -> Option<(i64, i64)> {
    let g = num_integer::gcd(num, den);
    let strip = |mut v: u64| {
        let mut twos = 0i64;
        let mut threes = 0i64;
        while v.is_multiple_of(2) {
            v /= 2;
            twos += 1;
        }
        while v.is_multiple_of(3) {
            v /= 3;
            threes += 1;
        }
        (v, twos, threes)
    };
    let (n_rest, n2, n3) = strip(num / g);
    let (d_rest, d2, d3) = strip(den / g);
    (n_rest == 1 && d_rest == 1).then_some((n2 - d2, n3 - d3))
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
    fn constants_match_direct_evaluation() {
        let ctx = ctx_1322();
        assert!((ctx.alpha_f64 - (4f64 / 3.0).ln()).abs() < 1e-15);
        assert!((ctx.beta_f64 - 1.5f64.ln()).abs() < 1e-15);
        assert!((ctx.rho_f64 - 1.409420839653209).abs() < 1e-13);
        assert!((ctx.eps_f64 - 1.0 / 999_999.0).abs() < 1e-18);
        assert!((ctx.delta1_f64 - (3f64.ln() / 2f64.ln() + 1.0)).abs() < 1e-14);
        // gamma1 = 3/4 + alpha1 * x0^-(delta1+1) is 3/4 up to ~1e-22
        assert!((ctx.ln_gamma1_f64 - 0.75f64.ln()).abs() < 1e-15);

        let ctx = ctx_2433();
        assert!((ctx.alpha_f64 - (9f64 / 8.0).ln()).abs() < 1e-15);
        assert!((ctx.rho_f64 - 2.442474596180859).abs() < 1e-13);
        assert!((ctx.eps_f64 - 5.0 / 999_995.0).abs() < 1e-18);
    }

    #[test]
    fn rejects_contracting_orientation_and_tiny_x0() {
        // the inverse family contracts on the residue branches
        assert!(BoundContext::new(2, 2, 1, 3, 1_000_000, 256).is_err());
        // eps >= alpha at small x0
        assert!(BoundContext::new(2, 4, 3, 3, 40, 256).is_err());
        assert!(BoundContext::new(2, 4, 3, 3, 60, 256).is_ok());
    }

    #[test]
    fn rho_rounding_matches_float_far_from_ties() {
        let ctx = ctx_1322();
        for l in [1u64, 2, 5, 276, 6475, 13226, 1_000_000] {
            let exact = ctx.round_rho_times(l).unwrap();
            let float = (ctx.rho_f64 * l as f64).round() as u64;
            assert_eq!(exact, float, "l = {l}");
        }
    }

    #[test]
    fn two_log_decomposition_handles_reduction_and_failure() {
        assert_eq!(two_log_decompose(4, 3), Some((2, -1)));
        assert_eq!(two_log_decompose(3, 2), Some((-1, 1)));
        assert_eq!(two_log_decompose(9, 8), Some((-3, 2)));
        assert_eq!(two_log_decompose(12, 8), Some((-1, 1)));
        assert_eq!(two_log_decompose(6, 6), Some((0, 0)));
        assert_eq!(two_log_decompose(5, 3), None);
        assert_eq!(two_log_decompose(15, 3), None);
    }

    #[test]
    fn transcendence_constants_for_both_families() {
        let rp = ctx_1322().rhin_params().unwrap();
        assert!((rp.c_add - 1.3399716).abs() < 1e-4, "got {}", rp.c_add);
        let rp = ctx_2433().rhin_params().unwrap();
        assert!((rp.c_add - 2.2330100).abs() < 1e-4, "got {}", rp.c_add);
        // the additive constant feeds the bound through exp(-13.3 c_add)
        let published = RhinParams::with_c_add(1.34);
        assert!(published.ln_lower_bound(100.0) > rp.ln_lower_bound(100.0));
    }

    #[test]
    fn growing_family_without_two_log_structure_is_rejected() {
        // P(2,6,5,3): cd/ab = 15/12 = 5/4 involves the prime 5
        let ctx = BoundContext::new(2, 6, 5, 3, 1_000_000, 256).unwrap();
        assert!(matches!(ctx.rhin_params(), Err(Error::InvalidParams(_))));
    }
}
