//! Continued-fraction expansion with rigorous rounding control.
//!
//! The expansion runs on a rational interval enclosing the input rather than
//! on a point approximation. Every emitted partial quotient is therefore
//! provably correct: whenever the interval endpoints disagree on the next
//! floor, the expansion refuses to guess and reports that more precision is
//! needed.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::real::PrecReal;

/// One convergent `p/q` of a continued fraction, together with its index and
/// partial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub a: BigInt,
}

/// Expands `x` into continued-fraction convergents, returning every
/// convergent with `q_n <= q_limit` plus the first one exceeding it (when
/// the expansion does not terminate earlier at an exact rational).
///
/// Fails with [`Error::PrecisionExhausted`] when the stored precision of `x`
/// cannot decide a partial quotient; retry with a higher-precision input,
/// e.g. through [`cf_expand_with_retry`].
pub fn cf_expand(x: &PrecReal, q_limit: &BigUint) -> Result<Vec<Convergent>> {
    let (mut lo, mut hi) = x.to_rational_enclosure(4)?;
    if lo <= BigRational::zero() {
        return Err(Error::InvalidParams(
            "continued fraction input must be strictly positive".into(),
        ));
    }
    let q_limit = BigInt::from(q_limit.clone());
    let mut out = Vec::new();
    let (mut pm2, mut pm1) = (BigInt::from(0), BigInt::from(1));
    let (mut qm2, mut qm1) = (BigInt::from(1), BigInt::from(0));
    for n in 0..10_000 {
        let a_lo = lo.floor().to_integer();
        let a_hi = hi.floor().to_integer();
        if a_lo != a_hi {
            return Err(Error::PrecisionExhausted(format!(
                "partial quotient {n} is ambiguous at precision {}",
                x.prec()
            )));
        }
        let a = a_lo;
        let p = &a * &pm1 + &pm2;
        let q = &a * &qm1 + &qm2;
        out.push(Convergent {
            n,
            p: p.clone(),
            q: q.clone(),
            a,
        });
        if q > q_limit {
            return Ok(out);
        }
        let frac_lo = &lo - lo.floor();
        let frac_hi = &hi - hi.floor();
        if frac_hi.is_zero() {
            // both endpoints hit an integer: the value is exactly rational
            return Ok(out);
        }
        if frac_lo.is_zero() {
            // one endpoint terminates, the other continues: undecidable
            return Err(Error::PrecisionExhausted(format!(
                "expansion may terminate at index {n}; precision {} cannot tell",
                x.prec()
            )));
        }
        // reciprocal of an interval of positive fractions swaps the ends
        (lo, hi) = (frac_hi.recip(), frac_lo.recip());
        (pm2, pm1) = (pm1, p);
        (qm2, qm1) = (qm1, q);
    }
    Err(Error::PrecisionExhausted(
        "expansion exceeded 10000 partial quotients".into(),
    ))
}

/// Calls `make_x(bits)` with doubling precision until [`cf_expand`]
/// succeeds, starting from `start_bits` and giving up beyond `max_bits`.
pub fn cf_expand_with_retry(
    make_x: impl Fn(usize) -> Result<PrecReal>,
    q_limit: &BigUint,
    start_bits: usize,
    max_bits: usize,
) -> Result<Vec<Convergent>> {
    let mut bits = start_bits.max(32);
    loop {
        match cf_expand(&make_x(bits)?, q_limit) {
            Err(Error::PrecisionExhausted(_)) if bits < max_bits => bits *= 2,
            other => return other,
        }
    }
}

/// Largest partial quotient among convergents with `q_n <= q_limit`.
pub fn max_partial_quotient(convergents: &[Convergent], q_limit: &BigUint) -> Option<BigInt> {
    let q_limit = BigInt::from(q_limit.clone());
    convergents
        .iter()
        .filter(|c| c.q <= q_limit)
        .map(|c| c.a.clone())
        .max()
}
