//! Command-line driver for residue-class permutations of ℕ₀.
//!
//! Subcommands: `run` follows one trajectory, `census` sweeps a seed range,
//! `table` reproduces the embedded reference tables (with `--check`), and
//! `bounds` exposes the cycle-exclusion machinery.

mod args;
mod bounds_cmd;
mod census_cmd;
mod render;
mod run_cmd;
mod selector;
mod table_cmd;

use clap::{Parser, Subcommand};

use bounds_cmd::BoundsCmd;
use census_cmd::CensusArgs;
use run_cmd::RunArgs;
use selector::UsageError;
use table_cmd::TableArgs;

#[derive(Parser)]
#[command(
    name = "permseq",
    version,
    about = "Cycles, divergence censuses, and cycle-exclusion bounds for residue-class permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Follow one trajectory until it cycles, escapes, or runs out of steps
    Run(RunArgs),
    /// Sweep all seeds below a bound and inventory cycles and divergence
    Census(CensusArgs),
    /// Reproduce a reference table, optionally diffing against embedded values
    Table(TableArgs),
    /// Diophantine cycle-exclusion machinery
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Run(a) => run_cmd::cmd_run(a),
        Command::Census(a) => census_cmd::cmd_census(a),
        Command::Table(a) => table_cmd::cmd_table(a),
        Command::Bounds(c) => bounds_cmd::cmd_bounds(c),
    }
}

/// Selector and parameter mistakes exit with 64, everything else with 1.
fn failure_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 64;
    }
    match err.downcast_ref::<permseq_core::Error>() {
        Some(permseq_core::Error::InvalidParams(_)) => 64,
        _ => 1,
    }
}

/// Die quietly when the reader of our stdout goes away (e.g. `permseq ... | head`).
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests land here too; they are not errors
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            failure_code(&err)
        }
    };
    std::process::exit(code);
}
