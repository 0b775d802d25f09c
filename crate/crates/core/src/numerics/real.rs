//! Multi-precision real arithmetic with explicit precision tracking.
//!
//! Wraps `astro_float::BigFloat` behind a small value type that carries its
//! working precision in bits, rounds to nearest-even everywhere, and offers
//! exact escapes back into rational arithmetic (enclosures) so that
//! downstream integer decisions such as continued-fraction digits never
//! depend on hidden rounding.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    // Cache of pi/e/ln2/ln10 used internally by astro-float's transcendental
    // functions; per-thread to keep the API lock-free.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A real number at a fixed binary precision.
#[derive(Clone, Debug)]
pub struct PrecReal {
    value: BigFloat,
    prec: usize,
}

impl PrecReal {
    /// Default precision used by the bound machinery.
    pub const DEFAULT_PREC: usize = 256;

    pub fn from_u64(v: u64, prec: usize) -> Self {
        PrecReal {
            value: BigFloat::from_u64(v, prec),
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        PrecReal {
            value: BigFloat::from_i64(v, prec),
            prec,
        }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        PrecReal {
            value: BigFloat::from_f64(v, prec),
            prec,
        }
    }

    /// Exact conversion of an unbounded natural number.
    pub fn from_biguint(v: &BigUint, prec: usize) -> Self {
        if let Ok(small) = u64::try_from(v) {
            return PrecReal::from_u64(small, prec);
        }
        let needed = v.bits() as usize + 1;
        let digits = v.to_str_radix(10);
        let wide = with_consts(|cc| BigFloat::parse(&digits, Radix::Dec, prec.max(needed), RM, cc));
        PrecReal { value: wide, prec: prec.max(needed) }.with_prec(prec)
    }

    /// Parses a decimal literal (scientific notation allowed).
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        if v.is_nan() {
            return Err(Error::InvalidParams(format!("unparseable number {s:?}")));
        }
        Ok(PrecReal { value: v, prec })
    }

    /// The ratio `num/den` rounded once to `prec` bits.
    pub fn from_ratio(num: &BigUint, den: &BigUint, prec: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        let wp = prec + 32;
        let n = PrecReal::from_biguint(num, wp);
        let d = PrecReal::from_biguint(den, wp);
        Ok(n.div(&d).with_prec(prec))
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Re-rounds to a new precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        let zero = BigFloat::from_u64(0, prec);
        PrecReal {
            value: self.value.add(&zero, prec, RM),
            prec,
        }
    }

    fn join(&self, other: &Self) -> usize {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.join(other);
        PrecReal { value: self.value.add(&other.value, p, RM), prec: p }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.join(other);
        PrecReal { value: self.value.sub(&other.value, p, RM), prec: p }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.join(other);
        PrecReal { value: self.value.mul(&other.value, p, RM), prec: p }
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.join(other);
        PrecReal { value: self.value.div(&other.value, p, RM), prec: p }
    }

    pub fn neg(&self) -> Self {
        PrecReal { value: self.value.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        PrecReal { value: self.value.abs(), prec: self.prec }
    }

    /// Natural logarithm; NaN for nonpositive input, so callers validate.
    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.value.ln(self.prec, RM, cc));
        PrecReal { value: v, prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.value.exp(self.prec, RM, cc));
        PrecReal { value: v, prec: self.prec }
    }

    pub fn pow(&self, e: &Self) -> Self {
        let p = self.join(e);
        let v = with_consts(|cc| self.value.pow(&e.value, p, RM, cc));
        PrecReal { value: v, prec: p }
    }

    pub fn sqrt(&self) -> Self {
        PrecReal { value: self.value.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.value.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|sign| sign.cmp(&0))
    }

    /// Binary exponent of the leading bit: the value lies in
    /// `[2^(e-1), 2^e)`. `None` for zero or NaN.
    pub fn exponent(&self) -> Option<i64> {
        if self.value.is_zero() || self.value.is_nan() {
            return None;
        }
        self.value.as_raw_parts().map(|(_, _, _, e, _)| e as i64)
    }

    /// Nearest double. Values beyond the double range flush to 0 or ±inf.
    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        if self.value.is_nan() {
            return f64::NAN;
        }
        let Some((words, _, sign, e, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        if self.value.is_inf() {
            return if sign == Sign::Neg { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let k = words.len();
        let e = e as i64;
        // mantissa is normalized to the word boundary, top bit set
        let mut v = words[k - 1] as f64 * pow2(e - 64);
        if k >= 2 {
            v += words[k - 2] as f64 * pow2(e - 128);
        }
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// A rational interval `[lo, hi]` guaranteed to contain the true value
    /// this object approximates, `slack_ulps` units of its own last place
    /// wide on each side.
    pub fn to_rational_enclosure(&self, slack_ulps: u32) -> Result<(BigRational, BigRational)> {
        if self.value.is_zero() {
            let ulp = BigRational::new(BigInt::one(), BigInt::one() << self.prec);
            let slack = ulp * BigInt::from(slack_ulps);
            return Ok((-slack.clone(), slack));
        }
        let (words, _, sign, e, inexact) = self
            .value
            .as_raw_parts()
            .ok_or_else(|| Error::PrecisionExhausted("enclosure of non-finite value".into()))?;
        let len_bits = words.len() * 64;
        let mut mant = BigUint::zero();
        for w in words.iter().rev() {
            mant = (mant << 64) | BigUint::from(*w);
        }
        // exactly-representable values need no slack; otherwise one ulp at
        // precision `prec` equals 2^(len_bits - prec) mantissa units
        let ulps = if inexact { slack_ulps } else { 0 };
        let slack = BigUint::from(ulps) << len_bits.saturating_sub(self.prec);
        let lo_m = BigInt::from(mant.clone()) - BigInt::from(slack.clone());
        let hi_m = BigInt::from(mant) + BigInt::from(slack);
        // value = mantissa / 2^len_bits * 2^e
        let scale_num = e as i64 - len_bits as i64;
        let make = |m: BigInt| -> BigRational {
            if scale_num >= 0 {
                BigRational::from_integer(m << scale_num as usize)
            } else {
                BigRational::new(m, BigInt::one() << (-scale_num) as usize)
            }
        };
        let (lo, hi) = (make(lo_m), make(hi_m));
        Ok(match sign {
            Sign::Neg => (-hi, -lo),
            _ => (lo, hi),
        })
    }

    /// Decimal rendering at full stored precision.
    pub fn to_decimal_string(&self) -> String {
        with_consts(|cc| {
            self.value
                .format(Radix::Dec, RM, cc)
                .unwrap_or_else(|_| "nan".into())
        })
    }
}

fn pow2(e: i64) -> f64 {
    if e < -1200 {
        0.0
    } else if e > 1200 {
        f64::INFINITY
    } else {
        2f64.powi(e as i32)
    }
}

impl fmt::Display for PrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// Natural log of the positive rational `num/den` at `prec` bits, accurate
/// to within 4 units in the last place.
pub fn hp_log(num: &BigUint, den: &BigUint, prec: usize) -> Result<PrecReal> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::InvalidParams(
            "logarithm requires a positive rational".into(),
        ));
    }
    let wp = prec + 32;
    let n = PrecReal::from_biguint(num, wp);
    let d = PrecReal::from_biguint(den, wp);
    Ok(n.div(&d).ln().with_prec(prec))
}

/// Convenience form of [`hp_log`] for machine-size ratios.
pub fn hp_log_u64(num: u64, den: u64, prec: usize) -> Result<PrecReal> {
    hp_log(&BigUint::from(num), &BigUint::from(den), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    const LN_4_3: &str = "0.287682072451780927439219005993827431503509710897761056506666";
    const LN_3_2: &str = "0.405465108108164381978013115464349136571990423462494197614014";
    const LN_9_8: &str = "0.117783035656383454538794109470521705068480712564733141107349";

    /// |x - y| <= 2^(exp(x) - bits), i.e. x and y share about `bits`
    /// leading bits.
    fn agree_to_bits(x: &PrecReal, y: &PrecReal, bits: i64) {
        let diff = x.sub(y).abs();
        if diff.is_zero() {
            return;
        }
        let ex = x.exponent().expect("nonzero");
        let ed = diff.exponent().expect("nonzero");
        assert!(
            ed <= ex - bits,
            "difference too large: diff exponent {ed}, value exponent {ex}, wanted {bits} bits"
        );
    }

    /// Exact series for ln(p/q) via 2*atanh((p-q)/(p+q)), as a rational with
    /// a proven tail bound below 2^-(bits+8).
    fn ln_series_rational(p: u64, q: u64, bits: usize) -> (BigRational, BigRational) {
        let t = BigRational::new(
            BigInt::from(p as i64 - q as i64),
            BigInt::from((p + q) as i64),
        );
        let t2 = &t * &t;
        let tail_cap = BigRational::new(BigInt::one(), BigInt::one() << (bits + 8));
        let one_minus_t2 = BigRational::one() - t2.clone();
        let mut sum = BigRational::zero();
        let mut t_pow = t.clone();
        let mut k: u64 = 0;
        loop {
            sum += &t_pow / BigRational::from_integer(BigInt::from(2 * k + 1));
            t_pow *= &t2;
            // remaining terms are bounded by a geometric series in t^2
            let tail = (&t_pow / &one_minus_t2).abs();
            if tail < tail_cap {
                let two = BigRational::from_integer(BigInt::from(2));
                return (sum * &two, tail * two);
            }
            k += 1;
            assert!(k < 100_000, "series did not converge");
        }
    }

    #[test]
    fn hp_log_matches_frozen_decimals() {
        for (n, d, s) in [(4u64, 3u64, LN_4_3), (3, 2, LN_3_2), (9, 8, LN_9_8)] {
            let x = hp_log_u64(n, d, 256).unwrap();
            let y = PrecReal::parse(s, 256).unwrap();
            // the reference strings carry ~199 bits; allow slack beyond that
            agree_to_bits(&x, &y, 190);
        }
    }

    #[test]
    fn hp_log_enclosure_contains_exact_series_value() {
        for (p, q) in [(3u64, 2u64), (4, 3), (9, 8), (2, 1)] {
            let x = hp_log_u64(p, q, 256).unwrap();
            let (series, tail) = ln_series_rational(p, q, 256);
            let (lo, hi) = x.to_rational_enclosure(4).unwrap();
            assert!(
                &lo - &tail <= series && series <= &hi + &tail,
                "ln({p}/{q}) enclosure misses the exact value"
            );
        }
    }

    #[test]
    fn hp_log_is_precision_consistent() {
        let a = hp_log_u64(3, 2, 256).unwrap();
        let b = hp_log_u64(3, 2, 512).unwrap();
        agree_to_bits(&a, &b, 250);
    }

    #[test]
    fn hp_log_rejects_nonpositive() {
        assert!(hp_log(&BigUint::zero(), &BigUint::one(), 64).is_err());
        assert!(hp_log(&BigUint::one(), &BigUint::zero(), 64).is_err());
    }

    #[test]
    fn to_f64_round_trips_small_values() {
        let x = hp_log_u64(2, 1, 256).unwrap();
        assert!((x.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        let neg = PrecReal::from_i64(-12345, 128);
        assert_eq!(neg.to_f64(), -12345.0);
        assert_eq!(PrecReal::from_u64(0, 64).to_f64(), 0.0);
    }

    #[test]
    fn tiny_exponents_survive_exp_but_flush_in_f64() {
        // e^-2852 is far below the double range yet representable here
        let x = PrecReal::from_i64(-2852, 256).exp();
        assert!(!x.is_zero());
        let e = x.exponent().unwrap();
        let expected = (-2852.0 / std::f64::consts::LN_2).round() as i64;
        assert!((e - expected).abs() <= 2, "exponent {e} vs {expected}");
        assert_eq!(x.to_f64(), 0.0);
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = PrecReal::from_ratio(&BigUint::from(7u32), &BigUint::from(5u32), 256).unwrap();
        let y = x.ln().exp();
        agree_to_bits(&x, &y, 250);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let g = PrecReal::from_ratio(&BigUint::from(3u32), &BigUint::from(4u32), 256).unwrap();
        let cubed = g.mul(&g).mul(&g);
        let via_pow = g.pow(&PrecReal::from_u64(3, 256));
        agree_to_bits(&cubed, &via_pow, 250);
    }

    #[test]
    fn enclosure_is_ordered_and_tight() {
        let x = hp_log_u64(3, 2, 256).unwrap();
        let (lo, hi) = x.to_rational_enclosure(4).unwrap();
        assert!(lo < hi);
        let width = &hi - &lo;
        // 8 ulp at 256 bits of a value near 2^-1
        let cap = BigRational::new(BigInt::one(), BigInt::one() << 245);
        assert!(width < cap, "enclosure too wide");
    }

    #[test]
    fn negative_value_enclosure() {
        // ln(2/3) is inexact, so both endpoints pick up slack and the
        // sign flip must keep them ordered
        let x = hp_log_u64(2, 3, 128).unwrap();
        let (lo, hi) = x.to_rational_enclosure(4).unwrap();
        assert!(lo < hi);
        assert!(hi < BigRational::zero());
        // exact negatives collapse to a point interval containing the value
        let y = PrecReal::from_i64(-3, 128);
        let (lo, hi) = y.to_rational_enclosure(4).unwrap();
        let v = BigRational::from_integer(BigInt::from(-3));
        assert!(lo <= v && v <= hi);
    }

    #[test]
    fn from_biguint_is_exact_for_wide_integers() {
        let v = BigUint::parse_bytes(b"340282366920938463463374607431768211507", 10).unwrap();
        let x = PrecReal::from_biguint(&v, 256);
        let (lo, hi) = x.to_rational_enclosure(0).unwrap();
        let exact = BigRational::from_integer(BigInt::from(v));
        assert!(lo <= exact && exact <= hi);
    }
}
