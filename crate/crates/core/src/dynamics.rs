//! Iteration of a single trajectory and cycle classification.
//!
//! Because the maps are bijections, a forward orbit either returns to an
//! earlier point (closing a cycle) or wanders forever; in practice a
//! trajectory is declared apparently divergent once it clears a threshold.
//! Since iterates oscillate, the escape check optionally waits until the
//! trajectory has shown a minimum number of local maxima, so a single early
//! spike over the threshold is not mistaken for divergence.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::nat::Nat;
use crate::perm::Permutation;

/// A cycle in canonical rotation (starting at its smallest element).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub min: Nat,
    pub max: Nat,
    pub length: usize,
    /// Steps through the branches for non-multiples of the class modulus.
    pub k: usize,
    /// Steps through the multiple-of-modulus branch.
    pub l: usize,
    /// Number of cyclic local maxima; 0 for fixed points, 1 for 2-cycles.
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Nat>>,
}

/// Where a trajectory ended up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryOutcome {
    /// Returned to a previously visited point after `entry_steps` steps of
    /// non-cyclic approach (0 for a bijection seed, which is itself in the
    /// cycle).
    Cycle {
        record: CycleRecord,
        entry_steps: usize,
    },
    /// Crossed the escape threshold with the maxima quota met.
    Escaped {
        last: Nat,
        steps: usize,
        maxima_seen: usize,
    },
    /// Gave up after the step budget.
    StepLimit { steps: usize },
}

/// Escape and budget configuration for trajectory runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSettings {
    /// A trajectory exceeding this value is an escape candidate.
    pub escape_threshold: u64,
    /// Local maxima required before an escape is accepted; 0 disables the
    /// gate.
    pub m_floor: usize,
    pub step_limit: usize,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            escape_threshold: 100_000_000,
            m_floor: 10,
            step_limit: 10_000_000,
        }
    }
}

/// Follows the forward orbit of `x0` until it cycles, escapes, or exhausts
/// the step budget.
pub fn run_trajectory(
    perm: &dyn Permutation,
    x0: &Nat,
    settings: &RunSettings,
) -> Result<TrajectoryOutcome> {
    let escape = Nat::from(settings.escape_threshold);
    let mut order: Vec<Nat> = vec![x0.clone()];
    let mut index: HashMap<Nat, usize> = HashMap::from([(x0.clone(), 0)]);
    let mut maxima = 0usize;
    loop {
        let cur = order.last().expect("nonempty");
        let next = perm.apply(cur)?;
        let n = order.len();
        if n >= 2 && order[n - 2] < order[n - 1] && next < order[n - 1] {
            maxima += 1;
        }
        if let Some(&pos) = index.get(&next) {
            let record = classify_cycle(&order[pos..], perm.class_modulus());
            return Ok(TrajectoryOutcome::Cycle {
                record,
                entry_steps: pos,
            });
        }
        if next > escape && maxima >= settings.m_floor {
            return Ok(TrajectoryOutcome::Escaped {
                last: next,
                steps: order.len(),
                maxima_seen: maxima,
            });
        }
        if order.len() >= settings.step_limit {
            return Ok(TrajectoryOutcome::StepLimit {
                steps: order.len(),
            });
        }
        index.insert(next.clone(), order.len());
        order.push(next);
    }
}

/// Summarizes a cycle given its elements in traversal order. `modulus` is
/// the branch classifier (the `b` of a P(a,b,c,d) table): `l` counts the
/// elements it divides, `k` the rest.
pub fn classify_cycle(elements: &[Nat], modulus: u64) -> CycleRecord {
    assert!(!elements.is_empty(), "a cycle has at least one element");
    let n = elements.len();
    let min_pos = (0..n)
        .min_by_key(|&i| &elements[i])
        .expect("nonempty");
    let canonical: Vec<Nat> = (0..n)
        .map(|i| elements[(min_pos + i) % n].clone())
        .collect();
    let min = canonical[0].clone();
    let max = canonical.iter().max().expect("nonempty").clone();
    let l = canonical.iter().filter(|e| e.rem_u64(modulus) == 0).count();
    let m = (0..n)
        .filter(|&i| {
            let prev = &canonical[(i + n - 1) % n];
            let next = &canonical[(i + 1) % n];
            n > 1 && prev < &canonical[i] && next < &canonical[i]
        })
        .count();
    CycleRecord {
        min,
        max,
        length: n,
        k: n - l,
        l,
        m,
        elements: Some(canonical),
    }
}

/// Branch usage statistics for a set of trajectory elements under a
/// P(a,b,c,d)-shaped map with the given `b` and `d`.
///
/// `forward_factor` is the geometric per-step growth implied by the
/// observed branch frequencies; `inverse_factor` the same for the inverse
/// map. Both exceeding 1 is the signature of maps whose orbits appear to
/// drift upward in either direction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BranchStats {
    pub n: usize,
    /// Fraction of elements divisible by b.
    pub frac_b: f64,
    /// Fraction of elements divisible by d.
    pub frac_d: f64,
    pub forward_factor: f64,
    pub inverse_factor: f64,
    pub product: f64,
}

pub fn branch_stats(elements: &[Nat], b: u64, d: u64) -> BranchStats {
    let n = elements.len();
    let count_b = elements.iter().filter(|e| e.rem_u64(b) == 0).count();
    let count_d = elements.iter().filter(|e| e.rem_u64(d) == 0).count();
    let frac_b = count_b as f64 / n.max(1) as f64;
    let frac_d = count_d as f64 / n.max(1) as f64;
    // for valid parameters, cd/ab depends on b and d alone
    let expand = (d as f64 * (b as f64 - 1.0)) / (b as f64 * (d as f64 - 1.0));
    let forward_factor = (d as f64 / b as f64).powf(frac_b) * expand.powf(1.0 - frac_b);
    let inverse_factor = (b as f64 / d as f64).powf(frac_d) * (1.0 / expand).powf(1.0 - frac_d);
    BranchStats {
        n,
        frac_b,
        frac_d,
        forward_factor,
        inverse_factor,
        product: forward_factor * inverse_factor,
    }
}
