//! Locates the rightmost crossing of two positive, eventually separating
//! curves.
//!
//! The curves are supplied through their natural logarithms so that bounds
//! which underflow any floating-point format (such as the m-cycle upper
//! bound for large m) can still be compared. Geometric movement in x is
//! linear movement in u = ln x, so the search doubles x to bracket the last
//! sign change of `ln lhs - ln rhs` and then bisects in u.

use crate::error::{Error, Result};

/// Relative tolerance on the returned abscissa. Kept far below the
/// residual cap so that steeply separating curves still verify.
const X_TOLERANCE: f64 = 1e-12;
/// Acceptance threshold for |lhs/rhs - 1| at the solution.
const RESIDUAL_CAP: f64 = 1e-4;
/// Doublings explored past `x_min`; reaches beyond 10^190.
const MAX_DOUBLINGS: usize = 640;
const MAX_BISECTIONS: usize = 200;

/// Returns the largest `x >= x_min` with `lhs(x) = rhs(x)`, where both
/// functions are given as `x -> ln f(x)`.
pub fn solve_crossover(
    ln_lhs: impl Fn(f64) -> f64,
    ln_rhs: impl Fn(f64) -> f64,
    x_min: f64,
) -> Result<f64> {
    let gap = |u: f64| ln_lhs(u.exp()) - ln_rhs(u.exp());
    let mut u = x_min.max(2.0).ln();
    let mut prev: Option<(f64, f64)> = match gap(u) {
        g if g.is_finite() => Some((u, g)),
        _ => None,
    };
    let mut bracket: Option<(f64, f64)> = None;
    for _ in 0..MAX_DOUBLINGS {
        u += std::f64::consts::LN_2;
        let g = gap(u);
        if !g.is_finite() {
            prev = None;
            continue;
        }
        if let Some((pu, pg)) = prev {
            if pg == 0.0 {
                bracket = Some((pu, pu));
            } else if g == 0.0 || pg.signum() != g.signum() {
                bracket = Some((pu, u));
            }
        }
        prev = Some((u, g));
    }
    let (mut lo, mut hi) =
        bracket.ok_or_else(|| Error::NoCrossing("curves never intersect in range".into()))?;
    let mut glo = gap(lo);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo < X_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = gap(mid);
        if gm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let u_star = 0.5 * (lo + hi);
    let residual = gap(u_star).abs();
    if residual > RESIDUAL_CAP {
        return Err(Error::NoCrossing(format!(
            "relative residual {residual:.3e} exceeds {RESIDUAL_CAP:.0e} at x = {:.6e}",
            u_star.exp()
        )));
    }
    Ok(u_star.exp())
}
