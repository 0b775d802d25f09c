//! Construction and validation of residue-class permutations of ℕ₀.
//!
//! A permutation is described by a finite list of affine rules
//! `src_mod*n + src_res -> dst_mod*n + dst_res`. The rule sources must tile
//! the naturals (each x matches exactly one source class) and likewise the
//! rule targets; [`verify_bijection`] checks both sides.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nat::Nat;

pub mod ccset;
pub mod fafc;
pub mod generalize;
pub mod primecomp;

pub use ccset::{ccset_validate, CcReport, CcWitness};
pub use fafc::make_fafc;
pub use generalize::{
    extended_count, generalize, order_to_rank, proper_orders, rank_to_order, simple_count, GenMode,
};
pub use primecomp::PrimeCompositePerm;

/// One affine branch of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRule {
    pub src_mod: u64,
    pub src_res: u64,
    pub dst_mod: u64,
    pub dst_res: u64,
}

impl ResidueRule {
    pub fn matches(&self, x: &Nat) -> bool {
        x.rem_u64(self.src_mod) == self.src_res
    }

    pub fn matches_target(&self, x: &Nat) -> bool {
        x.rem_u64(self.dst_mod) == self.dst_res
    }

    pub fn forward(&self, x: &Nat) -> Nat {
        x.linear_map(self.src_mod, self.src_res, self.dst_mod, self.dst_res)
    }

    pub fn backward(&self, x: &Nat) -> Nat {
        x.linear_map(self.dst_mod, self.dst_res, self.src_mod, self.src_res)
    }
}

/// Four-parameter family descriptor; see [`make_pabcd`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PabcdParams {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

/// A rule-table permutation, serializable as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<PabcdParams>,
    pub rules: Vec<ResidueRule>,
}

/// Common interface shared by rule tables and procedural permutations.
pub trait Permutation: Send + Sync {
    fn apply(&self, x: &Nat) -> Result<Nat>;
    fn apply_inv(&self, x: &Nat) -> Result<Nat>;
    fn label(&self) -> &str;
    /// Modulus splitting elements into the two step kinds tracked by cycle
    /// statistics (multiples of it take one branch family).
    fn class_modulus(&self) -> u64;
}

impl PermSpec {
    /// The rule matched by `x`, trying rules in declaration order.
    pub fn rule_for(&self, x: &Nat) -> Option<&ResidueRule> {
        self.rules.iter().find(|r| r.matches(x))
    }

    /// The rule whose target class contains `x`.
    pub fn rule_into(&self, x: &Nat) -> Option<&ResidueRule> {
        self.rules.iter().find(|r| r.matches_target(x))
    }

    /// Swaps sources and targets.
    pub fn inverse(&self) -> PermSpec {
        PermSpec {
            label: format!("{}^-1", self.label),
            params: None,
            rules: self
                .rules
                .iter()
                .map(|r| ResidueRule {
                    src_mod: r.dst_mod,
                    src_res: r.dst_res,
                    dst_mod: r.src_mod,
                    dst_res: r.src_res,
                })
                .collect(),
        }
    }
}

impl Permutation for PermSpec {
    fn apply(&self, x: &Nat) -> Result<Nat> {
        self.rule_for(x)
            .map(|r| r.forward(x))
            .ok_or_else(|| Error::NoRule(x.to_string()))
    }

    fn apply_inv(&self, x: &Nat) -> Result<Nat> {
        self.rule_into(x)
            .map(|r| r.backward(x))
            .ok_or_else(|| Error::NoRule(x.to_string()))
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn class_modulus(&self) -> u64 {
        self.params
            .map(|p| p.b)
            .or_else(|| self.rules.iter().map(|r| r.src_mod).min())
            .unwrap_or(1)
    }
}

/// Builds the permutation P(a,b,c,d):
///
/// - `bn -> dn`
/// - `abn + r_i -> cdn + s_i`,
///
/// where `r_1 < r_2 < ...` are the non-multiples of `b` below `ab` and
/// `s_1 < s_2 < ...` the non-multiples of `d` below `cd`. Requires
/// `b, d >= 2` and the class-count identity `a(b-1) = c(d-1)`.
pub fn make_pabcd(a: u64, b: u64, c: u64, d: u64) -> Result<PermSpec> {
    if a == 0 || c == 0 || b < 2 || d < 2 {
        return Err(Error::InvalidParams(format!(
            "P({a},{b},{c},{d}): need a,c >= 1 and b,d >= 2"
        )));
    }
    let (ab, cd) = (
        a.checked_mul(b)
            .ok_or_else(|| Error::InvalidParams("a*b overflows".into()))?,
        c.checked_mul(d)
            .ok_or_else(|| Error::InvalidParams("c*d overflows".into()))?,
    );
    if a * (b - 1) != c * (d - 1) {
        return Err(Error::InvalidParams(format!(
            "P({a},{b},{c},{d}): a(b-1) = {} but c(d-1) = {}",
            a * (b - 1),
            c * (d - 1)
        )));
    }
    let mut rules = vec![ResidueRule {
        src_mod: b,
        src_res: 0,
        dst_mod: d,
        dst_res: 0,
    }];
    let sources = (1..ab).filter(|r| r % b != 0);
    let targets = (1..cd).filter(|s| s % d != 0);
    rules.extend(sources.zip(targets).map(|(r, s)| ResidueRule {
        src_mod: ab,
        src_res: r,
        dst_mod: cd,
        dst_res: s,
    }));
    Ok(PermSpec {
        label: format!("P({a},{b},{c},{d})"),
        params: Some(PabcdParams { a, b, c, d }),
        rules,
    })
}

/// Full two-sided tiling check for a rule table.
#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub is_bijection: bool,
    pub sources: CcReport,
    pub targets: CcReport,
}

pub fn verify_bijection(spec: &PermSpec) -> Result<BijectionReport> {
    let sources: Vec<(u64, u64)> = spec.rules.iter().map(|r| (r.src_mod, r.src_res)).collect();
    let targets: Vec<(u64, u64)> = spec.rules.iter().map(|r| (r.dst_mod, r.dst_res)).collect();
    let sources = ccset_validate(&sources)?;
    let targets = ccset_validate(&targets)?;
    Ok(BijectionReport {
        is_bijection: sources.valid && targets.valid,
        sources,
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply_u64(spec: &PermSpec, x: u64) -> u64 {
        spec.apply(&Nat::from(x)).unwrap().to_u64().unwrap()
    }

    #[test]
    fn collatz_permutation_values() {
        // 2n -> 3n, 4n+1 -> 3n+1, 4n+3 -> 3n+2
        let p = make_pabcd(2, 2, 1, 3).unwrap();
        let expected = [0u64, 1, 3, 2, 6, 4, 9, 5, 12, 7, 15, 8, 18, 10, 21, 11];
        for (x, want) in expected.iter().enumerate() {
            assert_eq!(apply_u64(&p, x as u64), *want, "f({x})");
        }
        assert_eq!(p.class_modulus(), 2);
    }

    #[test]
    fn inverse_pair_matches_swapped_parameters() {
        // P(1,3,2,2) is the inverse of P(2,2,1,3)
        let p = make_pabcd(2, 2, 1, 3).unwrap();
        let q = make_pabcd(1, 3, 2, 2).unwrap();
        for x in 0..500u64 {
            let y = apply_u64(&p, x);
            assert_eq!(apply_u64(&q, y), x);
            assert_eq!(p.apply_inv(&Nat::from(y)).unwrap(), Nat::from(x));
        }
    }

    #[test]
    fn nine_class_expander() {
        // P(2,4,3,3): 4n -> 3n and 8n + r -> 9n + s over six residue pairs
        let p = make_pabcd(2, 4, 3, 3).unwrap();
        let pairs = [(1u64, 1u64), (2, 2), (3, 4), (5, 5), (6, 7), (7, 8)];
        for (r, s) in pairs {
            assert_eq!(apply_u64(&p, r), s);
            assert_eq!(apply_u64(&p, 8 + r), 9 + s);
        }
        assert_eq!(apply_u64(&p, 4), 3);
        assert_eq!(apply_u64(&p, 8), 6);
    }

    #[test]
    fn rejects_mismatched_class_counts() {
        assert!(make_pabcd(1, 3, 1, 2).is_err());
        assert!(make_pabcd(2, 1, 1, 3).is_err());
        assert!(make_pabcd(0, 2, 0, 2).is_err());
    }

    #[test]
    fn bijection_check_accepts_valid_and_flags_broken_tables() {
        let p = make_pabcd(2, 6, 5, 3).unwrap();
        assert!(verify_bijection(&p).unwrap().is_bijection);

        let mut broken = p.clone();
        // making two sources identical double-covers one class and uncovers another
        broken.rules[2].src_res = broken.rules[1].src_res;
        let report = verify_bijection(&broken).unwrap();
        assert!(!report.is_bijection);
        assert!(!report.sources.valid);
        assert!(report.targets.valid);
    }

    #[test]
    fn spec_json_round_trip() {
        let p = make_pabcd(2, 4, 3, 3).unwrap();
        let json = serde_json::to_string_pretty(&p).unwrap();
        let back: PermSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(json.contains("src_mod"));
    }

    proptest! {
        /// apply_inv after apply is the identity on a wide random range.
        #[test]
        fn inverse_round_trip(x in 0u64..1_000_000_000, which in 0usize..3) {
            let p = match which {
                0 => make_pabcd(2, 2, 1, 3).unwrap(),
                1 => make_pabcd(2, 4, 3, 3).unwrap(),
                _ => make_pabcd(2, 6, 5, 3).unwrap(),
            };
            let x = Nat::from(x);
            let y = p.apply(&x).unwrap();
            prop_assert_eq!(p.apply_inv(&y).unwrap(), x);
        }
    }
}
