//! Validation of congruence-class covers.
//!
//! A family of residue classes `b_i (mod a_i)` tiles ℕ₀ exactly when the
//! classes are pairwise disjoint and the densities `1/a_i` sum to one. Both
//! checks run exactly: the sum in rational arithmetic, disjointness through
//! pairwise gcd tests, so no scan over a full lcm period is ever needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Ceiling on the least common modulus; guards against degenerate inputs.
const LCM_CEILING: u128 = 1_000_000_000_000;
/// How far to scan for an explicit uncovered witness before giving up.
const WITNESS_SCAN_CAP: u128 = 10_000_000;

/// Why a family of classes fails to tile ℕ₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CcWitness {
    /// Smallest natural number contained in two of the classes.
    DoubleCovered { residue: u128 },
    /// Smallest natural number contained in none of the classes.
    Uncovered { residue: u128 },
}

/// Result of [`ccset_validate`].
#[derive(Clone, Debug)]
pub struct CcReport {
    pub valid: bool,
    /// Exact value of `sum 1/a_i`.
    pub density: BigRational,
    /// Least common multiple of the moduli.
    pub lcm: u128,
    pub witness: Option<CcWitness>,
}

/// Checks whether the classes `(modulus, residue)` cover every natural
/// number exactly once.
pub fn ccset_validate(pairs: &[(u64, u64)]) -> Result<CcReport> {
    for &(m, r) in pairs {
        if m == 0 {
            return Err(Error::InvalidParams("zero modulus in class set".into()));
        }
        if r >= m {
            return Err(Error::InvalidParams(format!(
                "residue {r} is not reduced modulo {m}"
            )));
        }
    }
    let mut lcm: u128 = 1;
    for &(m, _) in pairs {
        lcm = lcm.lcm(&(m as u128));
        if lcm > LCM_CEILING {
            return Err(Error::ResourceLimit(format!(
                "lcm of moduli exceeds {LCM_CEILING}"
            )));
        }
    }
    let density: BigRational = pairs
        .iter()
        .map(|&(m, _)| BigRational::new(BigInt::one(), BigInt::from(m)))
        .sum();

    // pairwise disjointness: classes mod a and mod b intersect iff the
    // residues agree modulo gcd(a, b)
    let mut double: Option<u128> = None;
    for (i, &(mi, ri)) in pairs.iter().enumerate() {
        for &(mj, rj) in &pairs[i + 1..] {
            let g = mi.gcd(&mj);
            if ri % g == rj % g {
                let x = crt_min(mi as u128, ri as u128, mj as u128, rj as u128);
                double = Some(double.map_or(x, |cur| cur.min(x)));
            }
        }
    }
    if let Some(residue) = double {
        return Ok(CcReport {
            valid: false,
            density,
            lcm,
            witness: Some(CcWitness::DoubleCovered { residue }),
        });
    }
    // disjoint classes of total density one leave no gaps
    if density == BigRational::one() {
        return Ok(CcReport {
            valid: true,
            density,
            lcm,
            witness: None,
        });
    }
    let witness = (0..lcm.min(WITNESS_SCAN_CAP))
        .find(|&x| !pairs.iter().any(|&(m, r)| x % m as u128 == r as u128))
        .map(|residue| CcWitness::Uncovered { residue });
    Ok(CcReport {
        valid: false,
        density,
        lcm,
        witness,
    })
}

/// Smallest solution of `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)`; the system is
/// known to be compatible.
fn crt_min(m1: u128, r1: u128, m2: u128, r2: u128) -> u128 {
    let g = m1.gcd(&m2);
    let (m1g, m2g) = (m1 / g, m2 / g);
    // x = r1 + m1 * t with t ≡ (r2 - r1)/g * inv(m1/g) (mod m2/g)
    let diff = (r2 as i128 - r1 as i128) / g as i128;
    let inv = mod_inverse(m1g as i128, m2g as i128);
    let t = (diff % m2g as i128 * inv % m2g as i128).rem_euclid(m2g as i128) as u128;
    r1 + m1 * t
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inputs must be coprime");
    old_s.rem_euclid(m)
}
