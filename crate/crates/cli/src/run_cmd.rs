//! `run`: follow one trajectory and report where it ends.

use clap::Args;
use permseq_core::dynamics::{run_trajectory, RunSettings, TrajectoryOutcome};
use permseq_core::Nat;

use crate::args::parse_quantity;
use crate::selector::parse_selector;

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Permutation selector: pabcd:a,b,c,d[/simple:rank|/ext:rank],
    /// fafc:a,b,fa,c,d,fc, primecomp, or file:path.json
    #[arg(long)]
    pub perm: String,
    /// Starting element
    #[arg(long, value_parser = parse_quantity)]
    pub x0: u64,
    /// Iterate the inverse permutation
    #[arg(long)]
    pub inverse: bool,
    /// Escape threshold; crossing it (with the maxima quota met) ends the run
    #[arg(long, value_parser = parse_quantity, default_value = "1e8")]
    pub escape: u64,
    /// Local maxima required before an escape verdict; strictly increasing
    /// trajectories never form one, so the gate is off by default
    #[arg(long, default_value_t = 0)]
    pub m_floor: usize,
    /// Step budget
    #[arg(long, value_parser = parse_quantity, default_value = "1e7")]
    pub steps: u64,
    /// Emit the outcome as JSON
    #[arg(long)]
    pub json: bool,
}

/// Exit codes: 0 cycle, 2 escaped, 3 step budget exhausted.
pub fn cmd_run(a: RunArgs) -> anyhow::Result<i32> {
    let mut sel = parse_selector(&a.perm)?;
    if a.inverse {
        sel = sel.invert();
    }
    let settings = RunSettings {
        escape_threshold: a.escape,
        m_floor: a.m_floor,
        step_limit: a.steps as usize,
    };
    let outcome = run_trajectory(sel.perm.as_ref(), &Nat::from(a.x0), &settings)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&outcome)?);
    } else {
        print_outcome(&sel.label(), a.x0, &outcome);
    }
    Ok(match outcome {
        TrajectoryOutcome::Cycle { .. } => 0,
        TrajectoryOutcome::Escaped { .. } => 2,
        TrajectoryOutcome::StepLimit { .. } => 3,
    })
}

fn print_outcome(label: &str, seed: u64, outcome: &TrajectoryOutcome) {
    println!("{label}: seed {seed}");
    match outcome {
        TrajectoryOutcome::Cycle {
            record,
            entry_steps,
        } => {
            println!(
                "cycle after {entry_steps} steps: min {}  max {}  length {}  k {}  l {}  m {}",
                record.min, record.max, record.length, record.k, record.l, record.m
            );
            if let Some(elements) = &record.elements {
                let listed: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
                println!("elements: {}", listed.join(" "));
            }
        }
        TrajectoryOutcome::Escaped {
            last,
            steps,
            maxima_seen,
        } => {
            println!("escaped after {steps} steps: reached {last} ({maxima_seen} maxima seen)");
        }
        TrajectoryOutcome::StepLimit { steps } => {
            println!("undecided after {steps} steps");
        }
    }
}
