//! `census`: sweep all seeds below a bound, inventory cycles and
//! divergence classes, and optionally export the report.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use permseq_core::census::{cycle_census, partition_holds, CensusSettings};
use permseq_core::dynamics::CycleRecord;

use crate::args::parse_quantity;
use crate::render::{Cell, Format, Table};
use crate::selector::parse_selector;

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// Permutation selector (see `run --help`)
    #[arg(long)]
    pub perm: String,
    /// Sweep seeds 0..x0
    #[arg(long, value_parser = parse_quantity)]
    pub x0: u64,
    /// Iterate the inverse permutation
    #[arg(long)]
    pub inverse: bool,
    /// Escape threshold for the divergence verdict
    #[arg(long, value_parser = parse_quantity, default_value = "1e8")]
    pub escape: u64,
    /// Local maxima required before an escape verdict; strictly increasing
    /// trajectories never form one, so the gate is off by default
    #[arg(long, default_value_t = 0)]
    pub m_floor: usize,
    /// Step budget per seed
    #[arg(long, value_parser = parse_quantity, default_value = "1e7")]
    pub steps: u64,
    /// Drop element lists from cycle records
    #[arg(long)]
    pub no_elements: bool,
    /// Write the full report as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the cycle inventory as CSV (nr,x_min,x_max,length,m)
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn cmd_census(a: CensusArgs) -> anyhow::Result<i32> {
    let mut sel = parse_selector(&a.perm)?;
    if a.inverse {
        sel = sel.invert();
    }
    let settings = CensusSettings {
        escape_threshold: a.escape,
        m_floor: a.m_floor,
        step_limit: a.steps as usize,
        include_elements: !a.no_elements,
    };
    let report = cycle_census(sel.perm.as_ref(), a.x0, &settings)?;

    println!("census of {} below {}", report.label, report.x0);
    println!(
        "seeds: {} in cycles, {} entering cycles, {} divergent, {} undecided",
        report.in_cycle_seeds,
        report.enters_cycle_seeds,
        report.divergent_seed_count,
        report.step_limited_seeds.len()
    );
    let ratio = report.divergence_ratio();
    println!(
        "divergent classes: {} (ratio {}, about {:.4})",
        report.divergent_min_count,
        ratio,
        *ratio.numer() as f64 / *ratio.denom() as f64
    );
    if !report.divergent_minima.is_empty() {
        let shown: Vec<String> = report
            .divergent_minima
            .iter()
            .take(20)
            .map(|m| m.to_string())
            .collect();
        let more = report.divergent_minima.len().saturating_sub(20);
        let tail = if more > 0 {
            format!(" (+{more} more)")
        } else {
            String::new()
        };
        println!("class minima: {}{tail}", shown.join(" "));
    }
    println!(
        "seed partition: {}",
        if partition_holds(&report) {
            "complete"
        } else {
            "INCONSISTENT"
        }
    );
    cycles_table(
        format!("cycles intersecting [0, {}), ascending minimum", report.x0),
        &report.cycles,
    )
    .print(Format::Text)?;

    if let Some(path) = &a.out {
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
        println!("report written to {}", path.display());
    }
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["nr", "x_min", "x_max", "length", "m"])?;
        for (nr, c) in report.cycles.iter().enumerate() {
            w.write_record([
                (nr + 1).to_string(),
                c.min.to_string(),
                c.max.to_string(),
                c.length.to_string(),
                c.m.to_string(),
            ])?;
        }
        w.flush()?;
        println!("cycle table written to {}", path.display());
    }
    Ok(0)
}

/// Rows `nr, x_min, x_max, length, m`, numbered from 1 in the given order.
pub fn cycles_table(title: String, cycles: &[CycleRecord]) -> Table {
    Table {
        title,
        headers: vec!["nr", "x_min", "x_max", "length", "m"],
        rows: cycles
            .iter()
            .enumerate()
            .map(|(nr, c)| {
                let nat = |v: &permseq_core::Nat| match v.to_u128() {
                    Some(small) => Cell::Int(small),
                    None => Cell::Text(v.to_string()),
                };
                vec![
                    Cell::Int(nr as u128 + 1),
                    nat(&c.min),
                    nat(&c.max),
                    Cell::Int(c.length as u128),
                    Cell::Int(c.m as u128),
                ]
            })
            .collect(),
    }
}
