//! The prime/composite interleaving permutation.
//!
//! Evens enumerate the primes, odds the composites:
//!
//! - `0 -> 0`, `1 -> 1`,
//! - `2n -> n`-th prime (so 2 -> 2, 4 -> 3, 6 -> 5, ...),
//! - `2n+1 -> n`-th composite (3 -> 4, 5 -> 6, 7 -> 8, 9 -> 9, ...).
//!
//! Unlike the residue-class families this bijection is not affine on any
//! class, so values come from a sieve that grows on demand.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::nat::Nat;
use crate::perm::Permutation;

/// Hard ceiling on sieve growth before giving up.
const DEFAULT_SIEVE_CAP: u64 = 1 << 31;

struct Sieve {
    limit: u64,
    primes: Vec<u64>,
}

impl Sieve {
    fn new(limit: u64) -> Sieve {
        let mut is_comp = vec![false; limit as usize + 1];
        let mut primes = Vec::new();
        for x in 2..=limit {
            if !is_comp[x as usize] {
                primes.push(x);
                let mut multiple = x * x;
                while multiple <= limit {
                    is_comp[multiple as usize] = true;
                    multiple += x;
                }
            }
        }
        Sieve { limit, primes }
    }

    /// Primes at or below `x`.
    fn prime_count(&self, x: u64) -> usize {
        debug_assert!(x <= self.limit);
        self.primes.partition_point(|&p| p <= x)
    }

    /// Composites at or below `x` (4 is the first): everything in `[2, x]`
    /// that is not prime.
    fn composite_count(&self, x: u64) -> u64 {
        if x < 4 {
            return 0;
        }
        x - 1 - self.prime_count(x) as u64
    }

    fn nth_prime(&self, n: u64) -> Option<u64> {
        self.primes.get(n as usize - 1).copied()
    }

    /// Smallest composite y with `composite_count(y) = n`, if sieved.
    fn nth_composite(&self, n: u64) -> Option<u64> {
        if self.composite_count(self.limit) < n {
            return None;
        }
        let (mut lo, mut hi) = (4u64, self.limit);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.composite_count(mid) < n {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }
}

/// See the module docs. Thread-safe; the sieve grows lazily under a write
/// lock and is shared by all lookups.
pub struct PrimeCompositePerm {
    sieve: RwLock<Sieve>,
    cap: u64,
}

impl Default for PrimeCompositePerm {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeCompositePerm {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_SIEVE_CAP)
    }

    pub fn with_cap(cap: u64) -> Self {
        PrimeCompositePerm {
            sieve: RwLock::new(Sieve::new(1 << 12)),
            cap,
        }
    }

    /// Runs `f` over a sieve guaranteed to satisfy `pred`, growing it as
    /// needed.
    fn with_sieve<T>(
        &self,
        pred: impl Fn(&Sieve) -> bool,
        f: impl Fn(&Sieve) -> T,
    ) -> Result<T> {
        {
            let sieve = self.sieve.read().expect("sieve lock");
            if pred(&sieve) {
                return Ok(f(&sieve));
            }
        }
        let mut sieve = self.sieve.write().expect("sieve lock");
        while !pred(&sieve) {
            if sieve.limit >= self.cap {
                return Err(Error::ResourceLimit(format!(
                    "sieve limit {} reached", self.cap
                )));
            }
            *sieve = Sieve::new((sieve.limit * 2).min(self.cap));
        }
        Ok(f(&sieve))
    }

    fn nth_prime(&self, n: u64) -> Result<u64> {
        self.with_sieve(
            |s| s.primes.len() as u64 >= n,
            |s| s.nth_prime(n).expect("checked"),
        )
    }

    fn nth_composite(&self, n: u64) -> Result<u64> {
        self.with_sieve(
            |s| s.composite_count(s.limit) >= n,
            |s| s.nth_composite(n).expect("checked"),
        )
    }

    fn index_of(&self, y: u64) -> Result<u64> {
        self.with_sieve(
            |s| s.limit >= y,
            |s| {
                let pi = s.prime_count(y) as u64;
                if s.prime_count(y) > 0 && s.primes[s.prime_count(y) - 1] == y {
                    // y is the pi-th prime
                    2 * pi
                } else {
                    // y is the n-th composite
                    2 * s.composite_count(y) + 1
                }
            },
        )
    }
}

impl Permutation for PrimeCompositePerm {
    fn apply(&self, x: &Nat) -> Result<Nat> {
        let x = x
            .to_u64()
            .ok_or_else(|| Error::ResourceLimit(format!("{x} is beyond sieve range")))?;
        let y = match x {
            0 | 1 => x,
            _ if x % 2 == 0 => self.nth_prime(x / 2)?,
            _ => self.nth_composite(x / 2)?,
        };
        Ok(Nat::from(y))
    }

    fn apply_inv(&self, y: &Nat) -> Result<Nat> {
        let y = y
            .to_u64()
            .ok_or_else(|| Error::ResourceLimit(format!("{y} is beyond sieve range")))?;
        let x = match y {
            0 | 1 => y,
            _ => self.index_of(y)?,
        };
        Ok(Nat::from(x))
    }

    fn label(&self) -> &str {
        "primecomp"
    }

    fn class_modulus(&self) -> u64 {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: &PrimeCompositePerm, x: u64) -> u64 {
        p.apply(&Nat::from(x)).unwrap().to_u64().unwrap()
    }

    fn finv(p: &PrimeCompositePerm, x: u64) -> u64 {
        p.apply_inv(&Nat::from(x)).unwrap().to_u64().unwrap()
    }

    #[test]
    fn small_values() {
        let p = PrimeCompositePerm::new();
        let expected = [
            (0u64, 0u64),
            (1, 1),
            (2, 2),   // 1st prime
            (3, 4),   // 1st composite
            (4, 3),
            (5, 6),
            (6, 5),
            (7, 8),
            (8, 7),
            (9, 9),   // 4th composite is 9
            (10, 11),
            (11, 10),
            (12, 13),
            (13, 12),
            (14, 17), // 7th prime
            (15, 14), // 7th composite
            (16, 19),
            (17, 15),
        ];
        for (x, want) in expected {
            assert_eq!(f(&p, x), want, "f({x})");
        }
    }

    #[test]
    fn inverse_round_trip_dense_range() {
        let p = PrimeCompositePerm::new();
        for x in 0..5000u64 {
            assert_eq!(finv(&p, f(&p, x)), x);
            assert_eq!(f(&p, finv(&p, x)), x);
        }
    }

    #[test]
    fn growth_reaches_large_indices() {
        let p = PrimeCompositePerm::new();
        // the 10000th prime is 104729; forces several sieve doublings
        assert_eq!(f(&p, 20000), 104_729);
        assert_eq!(finv(&p, 104_729), 20000);
    }

    #[test]
    fn cap_is_enforced() {
        let p = PrimeCompositePerm::with_cap(1 << 13);
        assert!(matches!(
            p.apply(&Nat::from(10_000_000u64)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn three_cycle_at_fourteen() {
        let p = PrimeCompositePerm::new();
        assert_eq!(f(&p, 14), 17);
        assert_eq!(f(&p, 17), 15);
        assert_eq!(f(&p, 15), 14);
    }
}
