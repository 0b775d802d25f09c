//! Generalizations of a rule-table permutation.
//!
//! Keeping the source classes fixed and redistributing the target classes
//! among them yields new bijections with the same branch moduli. Two
//! families are distinguished:
//!
//! - simple: the first rule (the multiple-of-b branch) keeps its target,
//!   only the remaining targets are permuted; `n! - 1` proper choices for
//!   `n` movable rules;
//! - extended: all targets move, and the first rule must receive a new one;
//!   `(n+1)! - n!` proper choices.
//!
//! Orderings are ranked lexicographically, rank 0 being the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PermSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    Simple,
    Extended,
}

/// Number of proper simple generalizations for `n` movable rules.
pub fn simple_count(n: usize) -> u128 {
    factorial(n) - 1
}

/// Number of proper extended generalizations for `n` movable rules.
pub fn extended_count(n: usize) -> u128 {
    factorial(n + 1) - factorial(n)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Lexicographic unranking of a permutation of `0..n`.
pub fn rank_to_order(rank: u128, n: usize) -> Result<Vec<usize>> {
    if rank >= factorial(n) {
        return Err(Error::InvalidParams(format!(
            "rank {rank} out of range for {n} symbols"
        )));
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut rank = rank;
    for i in (0..n).rev() {
        let block = factorial(i);
        let digit = (rank / block) as usize;
        rank %= block;
        order.push(pool.remove(digit));
    }
    Ok(order)
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn order_to_rank(order: &[usize]) -> u128 {
    let n = order.len();
    let mut rank = 0u128;
    for (i, &v) in order.iter().enumerate() {
        let smaller_remaining = order[i + 1..].iter().filter(|&&w| w < v).count();
        rank += smaller_remaining as u128 * factorial(n - 1 - i);
    }
    rank
}

fn validate_order(order: &[usize]) -> Result<()> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::InvalidParams(format!(
                "order {order:?} is not a permutation of 0..{n}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Builds the generalization of `base` given by `order`, which lists for
/// each rule the index of the rule whose target it receives.
///
/// Improper orders are rejected: the identity for [`GenMode::Simple`], and
/// any order fixing the first target for [`GenMode::Extended`].
pub fn generalize(base: &PermSpec, order: &[usize], mode: GenMode) -> Result<PermSpec> {
    validate_order(order)?;
    let movable: usize = match mode {
        GenMode::Simple => base.rules.len().saturating_sub(1),
        GenMode::Extended => base.rules.len(),
    };
    if order.len() != movable {
        return Err(Error::InvalidParams(format!(
            "order has {} entries; {:?} mode over {} rules needs {movable}",
            order.len(),
            mode,
            base.rules.len()
        )));
    }
    let offset = match mode {
        GenMode::Simple => {
            if order.iter().enumerate().all(|(i, &v)| i == v) {
                return Err(Error::InvalidParams(
                    "identity order is not a proper generalization".into(),
                ));
            }
            1
        }
        GenMode::Extended => {
            if order[0] == 0 {
                return Err(Error::InvalidParams(
                    "extended order must reassign the first target".into(),
                ));
            }
            0
        }
    };
    let mut rules = base.rules.clone();
    for (i, &src_of_target) in order.iter().enumerate() {
        let donor = base.rules[offset + src_of_target];
        rules[offset + i].dst_mod = donor.dst_mod;
        rules[offset + i].dst_res = donor.dst_res;
    }
    let tag = match mode {
        GenMode::Simple => "simple",
        GenMode::Extended => "ext",
    };
    Ok(PermSpec {
        label: format!("{}/{}:{}", base.label, tag, order_to_rank(order)),
        params: None,
        rules,
    })
}

/// The first `count` proper orders of the given mode, as `(rank, order)`
/// pairs in rank order.
pub fn proper_orders(base_rules: usize, mode: GenMode, count: usize) -> Vec<(u128, Vec<usize>)> {
    let n = match mode {
        GenMode::Simple => base_rules.saturating_sub(1),
        GenMode::Extended => base_rules,
    };
    let total = factorial(n);
    let mut out = Vec::with_capacity(count);
    let mut rank = 0u128;
    while out.len() < count && rank < total {
        let order = rank_to_order(rank, n).expect("rank in range");
        let proper = match mode {
            GenMode::Simple => rank != 0,
            GenMode::Extended => order[0] != 0,
        };
        if proper {
            out.push((rank, order));
        }
        rank += 1;
    }
    out
}
