//! Arbitrary-size natural numbers with a fast inline path.
//!
//! Trajectories of residue-class maps usually stay far below `u128::MAX`,
//! but expanding maps such as P(2,6,5,3) can push iterates past 10^900, so
//! the element type keeps small values unboxed and promotes to [`BigUint`]
//! only on overflow.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// A natural number that is `Small` whenever the value fits in `u128`.
///
/// Invariant: the `Big` variant only ever holds values strictly greater
/// than `u128::MAX`. Derived ordering, equality and hashing are consistent
/// because of this invariant (every `Big` value exceeds every `Small` one,
/// and the derived `Ord` places `Small` first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nat {
    Small(u128),
    Big(BigUint),
}

impl Nat {
    pub const ZERO: Nat = Nat::Small(0);

    /// Wraps a `BigUint`, demoting to the inline representation when possible.
    pub fn from_biguint(v: BigUint) -> Nat {
        match v.to_u128() {
            Some(s) => Nat::Small(s),
            None => Nat::Big(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Nat::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Nat::Small(v) => u64::try_from(*v).ok(),
            Nat::Big(_) => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self {
            Nat::Small(v) => Some(*v),
            Nat::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Nat::Small(v) => BigUint::from(*v),
            Nat::Big(v) => v.clone(),
        }
    }

    /// Lossy conversion for diagnostics and statistics.
    pub fn to_f64(&self) -> f64 {
        match self {
            Nat::Small(v) => *v as f64,
            Nat::Big(v) => v.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Remainder modulo a machine-size modulus. `m` must be nonzero.
    pub fn rem_u64(&self, m: u64) -> u64 {
        debug_assert!(m > 0);
        match self {
            Nat::Small(v) => (v % m as u128) as u64,
            Nat::Big(v) => (v % m).to_u64().expect("remainder fits"),
        }
    }

    /// Applies the affine residue map `src_mod*n + src_res -> dst_mod*n + dst_res`.
    ///
    /// The caller guarantees `self ≡ src_res (mod src_mod)`; the quotient
    /// `n = (self - src_res) / src_mod` is exact under that contract.
    pub fn linear_map(&self, src_mod: u64, src_res: u64, dst_mod: u64, dst_res: u64) -> Nat {
        debug_assert!(src_mod > 0 && dst_mod > 0);
        debug_assert_eq!(self.rem_u64(src_mod), src_res % src_mod);
        match self {
            Nat::Small(v) => {
                let n = (v - src_res as u128) / src_mod as u128;
                match n
                    .checked_mul(dst_mod as u128)
                    .and_then(|p| p.checked_add(dst_res as u128))
                {
                    Some(out) => Nat::Small(out),
                    None => {
                        let big = BigUint::from(n) * dst_mod + dst_res;
                        Nat::from_biguint(big)
                    }
                }
            }
            Nat::Big(v) => {
                let n = (v - src_res) / src_mod;
                Nat::from_biguint(n * dst_mod + dst_res)
            }
        }
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Nat {
        Nat::Small(v as u128)
    }
}

impl From<u128> for Nat {
    fn from(v: u128) -> Nat {
        Nat::Small(v)
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Nat {
        Nat::from_biguint(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(v) => write!(f, "{v}"),
            Nat::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Nat {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let big = BigUint::from_str(s)?;
        Ok(Nat::from_biguint(big))
    }
}

// Serialized as a decimal string so that arbitrarily large elements survive
// JSON round trips without precision loss.
impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NatVisitor;

        impl de::Visitor<'_> for NatVisitor {
            type Value = Nat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number as a decimal string or integer")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::from(v))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Nat, E> {
                s.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(NatVisitor)
    }
}
