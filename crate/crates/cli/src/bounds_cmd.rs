//! `bounds`: the cycle-exclusion engine surface.

use clap::{Args, Subcommand};
use num_bigint::BigUint;
use permseq_core::bounds::{
    laubl_candidates_in, mcycle_window, min_cycle_floor, partial_quotient_cap, threshold_row,
    BoundContext, RhinParams, DEFAULT_SCAN_CAP,
};
use permseq_core::numerics::{cf_expand_with_retry, hp_log};
use permseq_core::perm::PabcdParams;

use crate::args::{decades, parse_m_list, parse_quantity};
use crate::render::{Cell, Format, Table};
use crate::selector::{parse_selector, UsageError};

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Threshold step counts (l1, l2, x3) per maxima count
    Table(TableArgs),
    /// Continued-fraction convergents of the step ratio
    Convergents(ConvergentsArgs),
    /// (K, L) pairs passing the one-sided linear-form band
    Candidates(CandidatesArgs),
    /// Minimum contracting-step floor over a sweep of x0 decades
    Floor(FloorArgs),
    /// Full exclusion evidence for one maxima count
    Window(WindowArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Plain pabcd:a,b,c,d selector naming the family
    #[arg(long, default_value = "pabcd:1,3,2,2")]
    pub perm: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Verified census bound the hypothetical cycles must exceed
    #[arg(long, value_parser = parse_quantity, default_value = "1e6")]
    pub x0: u64,
    /// Maxima counts, e.g. `1..5` or `1,2,10`
    #[arg(long, default_value = "1..5")]
    pub m: String,
    /// Override the additive transcendence constant
    #[arg(long)]
    pub c_add: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ConvergentsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest denominator to expand to
    #[arg(long, value_parser = parse_quantity, default_value = "1e6")]
    pub q_limit: u64,
}

#[derive(Args, Debug)]
pub struct CandidatesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_parser = parse_quantity, default_value = "1e6")]
    pub x0: u64,
    /// Scan contracting step counts up to this
    #[arg(long, value_parser = parse_quantity)]
    pub lmax: u64,
    /// Start of the scanned range
    #[arg(long, value_parser = parse_quantity, default_value = "1")]
    pub from: u64,
}

#[derive(Args, Debug)]
pub struct FloorArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Decade sweep, e.g. `1e3..1e10`, or a single anchor
    #[arg(long, default_value = "1e3..1e10")]
    pub x0: String,
}

#[derive(Args, Debug)]
pub struct WindowArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_parser = parse_quantity, default_value = "1e6")]
    pub x0: u64,
    /// Maxima count of the hypothetical cycles
    #[arg(long)]
    pub m: u32,
    /// Longest window swept pair by pair before withholding the verdict
    #[arg(long, value_parser = parse_quantity, default_value_t = DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
    /// Override the additive transcendence constant
    #[arg(long)]
    pub c_add: Option<f64>,
}

pub fn cmd_bounds(cmd: BoundsCmd) -> anyhow::Result<i32> {
    match cmd {
        BoundsCmd::Table(a) => table(a),
        BoundsCmd::Convergents(a) => convergents(a),
        BoundsCmd::Candidates(a) => candidates(a),
        BoundsCmd::Floor(a) => floor(a),
        BoundsCmd::Window(a) => window(a),
    }
}

fn family(common: &CommonArgs) -> anyhow::Result<PabcdParams> {
    parse_selector(&common.perm)?.params().ok_or_else(|| {
        UsageError(format!(
            "bounds commands need a plain pabcd:a,b,c,d selector, got {:?}",
            common.perm
        ))
        .into()
    })
}

fn context(common: &CommonArgs, x0: u64) -> anyhow::Result<BoundContext> {
    let p = family(common)?;
    Ok(BoundContext::new(p.a, p.b, p.c, p.d, x0, 256)?)
}

fn rhin_for(ctx: &BoundContext, c_add: Option<f64>) -> anyhow::Result<RhinParams> {
    Ok(match c_add {
        Some(c) => RhinParams::with_c_add(c),
        None => ctx.rhin_params()?,
    })
}

fn table(a: TableArgs) -> anyhow::Result<i32> {
    let ctx = context(&a.common, a.x0)?;
    let rhin = rhin_for(&ctx, a.c_add)?;
    let (cap, verified_to) = partial_quotient_cap(&ctx, &rhin)?;
    let ms = parse_m_list(&a.m).map_err(UsageError)?;
    let mut rows = Vec::new();
    for m in ms {
        let row = threshold_row(&ctx, &rhin, cap, m)?;
        rows.push(vec![
            Cell::Int(m as u128),
            Cell::Float(row.l1),
            Cell::Float(row.l2),
            Cell::Float(row.x3),
        ]);
    }
    Table {
        title: format!(
            "threshold contracting-step counts for cycles of P({},{},{},{}) with minimum \
             above {} (quotient cap {cap}, verified to denominator {verified_to})",
            ctx.a, ctx.b, ctx.c, ctx.d, ctx.x0
        ),
        headers: vec!["m", "l1", "l2", "x3"],
        rows,
    }
    .print(a.common.format)?;
    Ok(0)
}

fn convergents(a: ConvergentsArgs) -> anyhow::Result<i32> {
    let p = family(&a.common)?;
    if p.b <= p.d {
        return Err(UsageError(format!(
            "P({},{},{},{}) has no positive step ratio (needs b > d)",
            p.a, p.b, p.c, p.d
        ))
        .into());
    }
    let (ab, cd) = (p.a * p.b, p.c * p.d);
    let q_limit = BigUint::from(a.q_limit);
    let convs = cf_expand_with_retry(
        |bits| {
            let num = hp_log(&BigUint::from(p.b), &BigUint::from(p.d), bits)?;
            let den = hp_log(&BigUint::from(cd), &BigUint::from(ab), bits)?;
            Ok(num.div(&den))
        },
        &q_limit,
        256,
        1 << 16,
    )?;
    let q_limit = num_bigint::BigInt::from(a.q_limit);
    let rows = convs
        .iter()
        .filter(|c| c.q <= q_limit)
        .map(|c| {
            vec![
                Cell::Int(c.n as u128),
                Cell::big(&c.a),
                Cell::big(&c.p),
                Cell::big(&c.q),
            ]
        })
        .collect();
    Table {
        title: format!(
            "convergents p/q of ln({}/{}) / ln({}/{}) with q <= {}",
            p.b, p.d, cd, ab, a.q_limit
        ),
        headers: vec!["n", "a", "p", "q"],
        rows,
    }
    .print(a.common.format)?;
    Ok(0)
}

fn candidates(a: CandidatesArgs) -> anyhow::Result<i32> {
    let ctx = context(&a.common, a.x0)?;
    let pairs = laubl_candidates_in(&ctx, a.from, a.lmax)?;
    Table {
        title: format!(
            "(K, L) pairs with {} <= L <= {} passing the one-sided band for \
             P({},{},{},{}) above {}: {} pairs",
            a.from,
            a.lmax,
            ctx.a,
            ctx.b,
            ctx.c,
            ctx.d,
            ctx.x0,
            pairs.len()
        ),
        headers: vec!["k", "l"],
        rows: pairs
            .iter()
            .map(|&(k, l)| vec![Cell::Int(k as u128), Cell::Int(l as u128)])
            .collect(),
    }
    .print(a.common.format)?;
    Ok(0)
}

fn floor(a: FloorArgs) -> anyhow::Result<i32> {
    let p = family(&a.common)?;
    let sweep = decades(&a.x0).map_err(UsageError)?;
    let mut rows = Vec::new();
    for x0 in sweep {
        let ctx = BoundContext::new(p.a, p.b, p.c, p.d, x0, 256)?;
        let floor = min_cycle_floor(&ctx)?;
        rows.push(vec![Cell::Int(x0 as u128), Cell::Int(floor as u128)]);
    }
    Table {
        title: format!(
            "cycles of P({},{},{},{}) with minimum above x0 have more than this many \
             contracting steps",
            p.a, p.b, p.c, p.d
        ),
        headers: vec!["x0", "floor"],
        rows,
    }
    .print(a.common.format)?;
    Ok(0)
}

fn window(a: WindowArgs) -> anyhow::Result<i32> {
    let ctx = context(&a.common, a.x0)?;
    let rhin = rhin_for(&ctx, a.c_add)?;
    let w = mcycle_window(&ctx, &rhin, a.m, a.scan_cap)?;
    match a.common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&w)?),
        _ => {
            println!(
                "cycles of P({},{},{},{}) with minimum above {} and maxima count {}:",
                ctx.a, ctx.b, ctx.c, ctx.d, w.x0, w.m
            );
            println!(
                "  floor: impossible with L <= {} (convergent floor)",
                w.floor_q
            );
            println!(
                "  l1 = {:.1} (convergents only beyond), l2 = {:.1} (quotient cap {}), \
                 x3 = {:.1} (transcendence, cap verified to {})",
                w.l1, w.l2, w.quotient_cap, w.x3, w.cap_verified_to
            );
            if w.scan_to < w.scan_from {
                println!("  scan: empty window, nothing to sweep");
            } else if !w.scan_complete {
                println!(
                    "  scan: {}..={} exceeds the cap of {} pairs, verdict withheld",
                    w.scan_from,
                    w.scan_to,
                    a.scan_cap
                );
            } else {
                println!(
                    "  scan {}..={}: {} band candidates, {} survive the envelope",
                    w.scan_from,
                    w.scan_to,
                    w.candidates.len(),
                    w.survivors.len()
                );
                for &(k, l) in &w.survivors {
                    println!("    survivor (K, L) = ({k}, {l})");
                }
            }
            println!(
                "  verdict: {}",
                if w.excluded {
                    "no such cycle exists"
                } else {
                    "not excluded"
                }
            );
        }
    }
    Ok(0)
}
