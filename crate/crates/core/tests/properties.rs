//! Cross-checks between the census (measured cycles) and the bound
//! machinery (what cycles are allowed to look like). Every cycle the
//! sweep finds must sit inside every band the lemmas put around it.

use permseq_core::bounds::{
    laubk_holds, laubl_holds, lambda_form, min_cycle_floor, ublm_ln, ublm_ln_f64, BoundContext,
};
use permseq_core::census::{cycle_census, CensusSettings};
use permseq_core::dynamics::CycleRecord;
use permseq_core::perm::make_pabcd;

const PREC: usize = 256;

fn census_cycles(a: u64, b: u64, c: u64, d: u64, x0: u64) -> Vec<CycleRecord> {
    let spec = make_pabcd(a, b, c, d).unwrap();
    let report = cycle_census(&spec, x0, &CensusSettings::default()).unwrap();
    report.cycles
}

/// Local minima of a cycle, read off the canonical element rotation.
fn local_minima(rec: &CycleRecord) -> Vec<u64> {
    let xs: Vec<u64> = rec
        .elements
        .as_ref()
        .expect("census keeps elements")
        .iter()
        .map(|x| x.to_u64().expect("small cycles"))
        .collect();
    let n = xs.len();
    (0..n)
        .filter(|&i| xs[(i + n - 1) % n] > xs[i] && xs[i] < xs[(i + 1) % n])
        .map(|i| xs[i])
        .collect()
}

/// Bound context anchored just below a cycle's minimum, when the family
/// admits one there (eps < alpha needs some room above ab).
fn context_below(a: u64, b: u64, c: u64, d: u64, rec: &CycleRecord) -> Option<BoundContext> {
    let x0 = rec.min.to_u64()?.checked_sub(1)?;
    BoundContext::new(a, b, c, d, x0, PREC).ok()
}

/// Every band and envelope from the bound lemmas, checked against one
/// measured cycle with its own minimum as the anchor.
fn check_cycle_against_bounds(a: u64, b: u64, c: u64, d: u64, rec: &CycleRecord) {
    let ctx = context_below(a, b, c, d, rec).expect("caller filtered");
    let (k, l, m) = (rec.k as u64, rec.l as u64, rec.m as u32);
    let tag = format!("P({a},{b},{c},{d}) cycle at {}", rec.min);
    assert_eq!(rec.k + rec.l, rec.length, "{tag}: step counts partition");

    // the two-sided and one-sided linear-form bands
    assert!(laubk_holds(&ctx, k, l), "{tag}: |Lambda| < eps K");
    assert!(laubl_holds(&ctx, k, l), "{tag}: one-sided band in L");

    // the m-maxima envelope, compared in log space
    let lambda_ln = lambda_form(&ctx, k, l).abs().ln().to_f64();
    let env_ln = ublm_ln(&ctx, m, l).unwrap().to_f64();
    assert!(
        lambda_ln < env_ln,
        "{tag}: ln|Lambda| = {lambda_ln} vs envelope {env_ln}"
    );

    // the largest local minimum exceeds d^(L/m)
    let minima = local_minima(rec);
    assert_eq!(minima.len(), rec.m, "{tag}: minima count equals maxima count");
    let top = *minima.iter().max().unwrap() as f64;
    let bottom = *minima.iter().min().unwrap() as f64;
    assert!(
        top.ln() > l as f64 / f64::from(m) * (d as f64).ln(),
        "{tag}: largest local minimum beats d^(L/m)"
    );

    // the chaining relation between extreme local minima
    let x = (ctx.delta1_f64 + 1.0).powi(m as i32 - 1);
    let ln_beta1 = (x - 1.0) / ctx.delta1_f64 * ctx.ln_gamma1_f64;
    let lhs = top.ln();
    let rhs = ln_beta1 + x * bottom.ln();
    if m >= 2 {
        assert!(lhs < rhs, "{tag}: chain bound {lhs} < {rhs}");
    } else {
        // a single local minimum makes the relation an equality
        assert!(lhs <= rhs + 1e-12, "{tag}: degenerate chain bound");
    }
}

#[test]
fn census_cycles_sit_inside_every_band() {
    let mut checked = 0;
    for (a, b, c, d, x0) in [(1u64, 3u64, 2u64, 2u64, 1_000u64), (2, 4, 3, 3, 1_000)] {
        for rec in census_cycles(a, b, c, d, x0) {
            if rec.m == 0 || rec.l == 0 {
                continue; // fixed points and expansion-only loops carry no band
            }
            if context_below(a, b, c, d, &rec).is_none() {
                continue; // minimum too close to ab for eps < alpha
            }
            check_cycle_against_bounds(a, b, c, d, &rec);
            checked += 1;
        }
    }
    // the 44-cycle of P(1,3,2,2) and the 90-, 213- and 645-cycles of
    // P(2,4,3,3) all clear the eps constraint
    assert_eq!(checked, 4, "expected four qualifying census cycles");
}

#[test]
fn envelope_decreases_beyond_its_hump() {
    for (a, b, c, d) in [(1u64, 3u64, 2u64, 2u64), (2, 4, 3, 3)] {
        let ctx = BoundContext::new(a, b, c, d, 1_000_000, PREC).unwrap();
        for m in [1u32, 2, 5, 20] {
            // the ln l growth gives way to the d^(L/m) decay at
            // l = m (delta1+1)^(m-1) / ln d; start safely past it
            let x = (ctx.delta1_f64 + 1.0).powi(m as i32 - 1);
            let hump = f64::from(m) * x / (ctx.d as f64).ln();
            let mut l = 2.0 * hump + 2.0;
            let mut prev = ublm_ln_f64(&ctx, m, l);
            for _ in 0..12 {
                l *= 2.0;
                let next = ublm_ln_f64(&ctx, m, l);
                assert!(
                    next < prev,
                    "P({a},{b},{c},{d}) m = {m}: envelope rose at l = {l}"
                );
                prev = next;
            }
        }
    }
}

#[test]
fn cycle_length_floor_never_drops_as_the_verified_range_grows() {
    for (a, b, c, d) in [(1u64, 3u64, 2u64, 2u64), (2, 4, 3, 3)] {
        let mut prev = 0;
        let mut x0 = 100u64;
        while x0 <= 10_000_000_000 {
            let ctx = BoundContext::new(a, b, c, d, x0, PREC).unwrap();
            let floor = min_cycle_floor(&ctx).unwrap();
            assert!(
                floor >= prev,
                "P({a},{b},{c},{d}): floor fell from {prev} to {floor} at x0 = {x0}"
            );
            prev = floor;
            x0 *= 3;
        }
    }
}

#[test]
fn band_never_reaches_past_the_adjacent_multiples() {
    let ctx = BoundContext::new(1, 3, 2, 2, 1_000_000, PREC).unwrap();
    // the one-sided band is at most eps beta l / (alpha - eps) wide, while
    // moving k by a full step shifts the form by alpha; once the band top
    // stays below alpha/2 no k beyond round(rho l) +- 1 can ever pass, so
    // the +-1 candidate scan is exhaustive
    let band_top = ctx.eps_f64 * ctx.beta_f64 * 31_240.0 / (ctx.alpha_f64 - ctx.eps_f64);
    assert!(band_top < 0.2 * ctx.alpha_f64, "band top {band_top}");
    // spot brute force around known candidates
    for l in [276u64, 552, 679, 828, 31_240] {
        let k0 = ctx.round_rho_times(l).unwrap();
        for k in k0 - 25..=k0 + 25 {
            if k.abs_diff(k0) > 1 {
                assert!(!laubl_holds(&ctx, k, l), "stray pair ({k}, {l})");
            }
        }
    }
}
