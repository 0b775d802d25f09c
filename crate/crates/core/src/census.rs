//! Exhaustive seed sweeps: cycle inventories and divergence statistics.
//!
//! Seeds `0..X0` are processed in ascending order. Each fresh seed is
//! iterated forward until it closes a cycle, reaches an element already
//! attributed to a known cycle or divergent class, or escapes. All elements
//! below `X0` witnessed along the way are memoized, so trajectories sharing
//! territory are counted as one divergent class: the class count approximates
//! the number of distinct apparently-divergent orbits intersecting `[0, X0)`,
//! not the number of escaping seeds (which is also reported).
//!
//! The sweep is deterministic; serialization of a report is byte-stable.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{classify_cycle, CycleRecord, RunSettings};
use crate::error::Result;
use crate::nat::Nat;
use crate::perm::{generalize, GenMode, PermSpec, Permutation};

/// Options for [`cycle_census`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSettings {
    pub escape_threshold: u64,
    /// Local maxima required before accepting an escape.
    pub m_floor: usize,
    pub step_limit: usize,
    /// Whether cycle records keep their element lists.
    pub include_elements: bool,
}

impl Default for CensusSettings {
    fn default() -> Self {
        CensusSettings {
            escape_threshold: 100_000_000,
            m_floor: 10,
            step_limit: 10_000_000,
            include_elements: true,
        }
    }
}

impl CensusSettings {
    fn run_settings(&self) -> RunSettings {
        RunSettings {
            escape_threshold: self.escape_threshold,
            m_floor: self.m_floor,
            step_limit: self.step_limit,
        }
    }
}

/// Outcome of sweeping all seeds below `x0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub label: String,
    pub x0: u64,
    pub settings: CensusSettings,
    /// All cycles intersecting `[0, x0)`, ascending by minimum element.
    pub cycles: Vec<CycleRecord>,
    /// Seeds sitting in one of those cycles.
    pub in_cycle_seeds: u64,
    /// Seeds whose orbit joins a cycle from outside (empty for bijections).
    pub enters_cycle_seeds: u64,
    /// Number of distinct apparently-divergent orbit classes.
    pub divergent_min_count: u64,
    /// Seeds belonging to those classes.
    pub divergent_seed_count: u64,
    /// Smallest witnessed element of each divergent class, ascending.
    pub divergent_minima: Vec<u64>,
    /// Seeds whose fate is unknown within the step budget.
    pub step_limited_seeds: Vec<u64>,
}

impl CensusReport {
    /// Divergent classes per seed, as an exact ratio.
    pub fn divergence_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.divergent_min_count, self.x0.max(1))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fate {
    Unset,
    InCycle,
    EntersCycle,
    Divergent(u32),
    StepLimit,
}

/// Errors on permutations whose forward map fails (a non-bijection), else
/// sweeps every seed below `x0`.
pub fn cycle_census(perm: &dyn Permutation, x0: u64, settings: &CensusSettings) -> Result<CensusReport> {
    let run = settings.run_settings();
    let escape = Nat::from(run.escape_threshold);
    let modulus = perm.class_modulus();

    let mut fate = vec![Fate::Unset; x0 as usize];
    let mut cycles: Vec<CycleRecord> = Vec::new();
    let mut class_minima: Vec<u64> = Vec::new();
    let mut step_limited: Vec<u64> = Vec::new();

    // borrow-friendly helper: which seed slot does a trajectory element
    // occupy, if any
    let slot = |x: &Nat| -> Option<usize> {
        x.to_u64()
            .and_then(|v| (v < x0).then_some(v as usize))
    };

    for seed in 0..x0 {
        if fate[seed as usize] != Fate::Unset {
            continue;
        }
        let start = Nat::from(seed);
        let mut order: Vec<Nat> = vec![start.clone()];
        let mut index = std::collections::HashMap::from([(start, 0usize)]);
        let mut maxima = 0usize;
        enum Verdict {
            NewCycle(usize),
            TouchesCycle,
            JoinsClass(u32),
            Escapes,
            OutOfSteps,
        }
        let verdict = loop {
            let cur = order.last().expect("nonempty");
            let next = perm.apply(cur)?;
            let n = order.len();
            if n >= 2 && order[n - 2] < order[n - 1] && next < order[n - 1] {
                maxima += 1;
            }
            if let Some(&pos) = index.get(&next) {
                break Verdict::NewCycle(pos);
            }
            if let Some(s) = slot(&next) {
                match fate[s] {
                    Fate::InCycle => break Verdict::TouchesCycle,
                    Fate::EntersCycle => break Verdict::TouchesCycle,
                    Fate::Divergent(class) => break Verdict::JoinsClass(class),
                    Fate::Unset | Fate::StepLimit => {}
                }
            }
            if next > escape && maxima >= run.m_floor {
                break Verdict::Escapes;
            }
            if order.len() >= run.step_limit {
                break Verdict::OutOfSteps;
            }
            index.insert(next.clone(), order.len());
            order.push(next);
        };
        match verdict {
            Verdict::NewCycle(pos) => {
                let mut record = classify_cycle(&order[pos..], modulus);
                for e in &order[pos..] {
                    if let Some(s) = slot(e) {
                        fate[s] = Fate::InCycle;
                    }
                }
                for e in &order[..pos] {
                    if let Some(s) = slot(e) {
                        fate[s] = Fate::EntersCycle;
                    }
                }
                if !settings.include_elements {
                    record.elements = None;
                }
                cycles.push(record);
            }
            Verdict::TouchesCycle => {
                for e in &order {
                    if let Some(s) = slot(e) {
                        fate[s] = Fate::EntersCycle;
                    }
                }
            }
            Verdict::JoinsClass(class) => {
                let mut low = class_minima[class as usize];
                for e in &order {
                    if let Some(s) = slot(e) {
                        if fate[s] == Fate::Unset || fate[s] == Fate::StepLimit {
                            fate[s] = Fate::Divergent(class);
                        }
                        low = low.min(e.to_u64().expect("slotted"));
                    }
                }
                class_minima[class as usize] = low;
            }
            Verdict::Escapes => {
                let class = class_minima.len() as u32;
                let mut low = seed;
                for e in &order {
                    if let Some(s) = slot(e) {
                        if fate[s] == Fate::Unset || fate[s] == Fate::StepLimit {
                            fate[s] = Fate::Divergent(class);
                        }
                        low = low.min(e.to_u64().expect("slotted"));
                    }
                }
                class_minima.push(low);
            }
            Verdict::OutOfSteps => {
                fate[seed as usize] = Fate::StepLimit;
                step_limited.push(seed);
            }
        }
    }

    let mut in_cycle_seeds = 0u64;
    let mut enters_cycle_seeds = 0u64;
    let mut divergent_seed_count = 0u64;
    for f in &fate {
        match f {
            Fate::InCycle => in_cycle_seeds += 1,
            Fate::EntersCycle => enters_cycle_seeds += 1,
            Fate::Divergent(_) => divergent_seed_count += 1,
            Fate::StepLimit => {}
            Fate::Unset => unreachable!("every seed is classified"),
        }
    }
    cycles.sort_by(|a, b| a.min.cmp(&b.min));
    let mut divergent_minima = class_minima;
    divergent_minima.sort_unstable();
    Ok(CensusReport {
        label: perm.label().to_string(),
        x0,
        settings: settings.clone(),
        divergent_min_count: divergent_minima.len() as u64,
        divergent_seed_count,
        divergent_minima,
        in_cycle_seeds,
        enters_cycle_seeds,
        cycles,
        step_limited_seeds: step_limited,
    })
}

/// Convenience wrapper returning only the divergence ratio.
pub fn divergence_ratio(
    perm: &dyn Permutation,
    x0: u64,
    settings: &CensusSettings,
) -> Result<Ratio<u64>> {
    Ok(cycle_census(perm, x0, settings)?.divergence_ratio())
}

/// Compact outcome of censusing one generalization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenSummary {
    pub rank: u128,
    pub label: String,
    pub cycle_count: usize,
    pub max_cycle_len: usize,
    pub max_cycle_element: Nat,
    pub divergent_min_count: u64,
}

/// Censuses the first `count` proper generalizations of `base` in rank
/// order. Work fans out across ranks; the result order is deterministic.
pub fn sweep_generalizations(
    base: &PermSpec,
    mode: GenMode,
    count: usize,
    x0: u64,
    settings: &CensusSettings,
) -> Result<Vec<GenSummary>> {
    let orders = crate::perm::proper_orders(base.rules.len(), mode, count);
    orders
        .par_iter()
        .map(|(rank, order)| {
            let spec = generalize(base, order, mode)?;
            let report = cycle_census(&spec, x0, settings)?;
            Ok(GenSummary {
                rank: *rank,
                label: spec.label.clone(),
                cycle_count: report.cycles.len(),
                max_cycle_len: report.cycles.iter().map(|c| c.length).max().unwrap_or(0),
                max_cycle_element: report
                    .cycles
                    .iter()
                    .map(|c| c.max.clone())
                    .max()
                    .unwrap_or(Nat::ZERO),
                divergent_min_count: report.divergent_min_count,
            })
        })
        .collect()
}

/// Checks that a report's seed classification covers every seed exactly
/// once; used by tests and the command-line census output.
pub fn partition_holds(report: &CensusReport) -> bool {
    let cycle_members: u64 = report
        .cycles
        .iter()
        .map(|c| match &c.elements {
            Some(els) => els.iter().filter(|e| **e < Nat::from(report.x0)).count() as u64,
            None => 0,
        })
        .sum();
    let accounted = report.in_cycle_seeds
        + report.enters_cycle_seeds
        + report.divergent_seed_count
        + report.step_limited_seeds.len() as u64;
    accounted == report.x0 && (!report.settings.include_elements || cycle_members == report.in_cycle_seeds)
}
