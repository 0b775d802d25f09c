//! Permutations mixing two source moduli and two target moduli.
//!
//! Where P(a,b,c,d) routes all multiples of b through a single rule, this
//! family splits them across `f_a` classes modulo `f_a*b` (and the targets
//! across `f_c` classes modulo `f_c*d`), giving bijections whose branch
//! counts on the two sides differ:
//!
//! - sources: `f_a*b*n + j*b` for `j < f_a`, then `a*b*n + r` for the
//!   non-multiples `r` of `b` below `a*b`;
//! - targets: `f_c*d*n + j*d` for `j < f_c`, then `c*d*n + s` likewise.
//!
//! Matching list lengths require `a(b-1) + f_a = c(d-1) + f_c`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::{PermSpec, ResidueRule};

/// Builds the mixed-modulus permutation described above. Preconditions:
/// `f_a | a`, `f_c | c`, `b, d >= 2`, `gcd(a, c) = gcd(b, d) = 1`, and the
/// class-count identity `a(b-1) + f_a = c(d-1) + f_c`. The degenerate
/// choice `f_a = a`, `f_c = c` (which forces `ab = cd`) yields the
/// identity map.
pub fn make_fafc(a: u64, b: u64, fa: u64, c: u64, d: u64, fc: u64) -> Result<PermSpec> {
    if a == 0 || c == 0 || fa == 0 || fc == 0 || b < 2 || d < 2 {
        return Err(Error::InvalidParams(
            "need a, c, f_a, f_c >= 1 and b, d >= 2".into(),
        ));
    }
    if !a.is_multiple_of(fa) || !c.is_multiple_of(fc) {
        return Err(Error::InvalidParams(format!(
            "f_a = {fa} must divide a = {a} and f_c = {fc} must divide c = {c}"
        )));
    }
    let n_src = a * (b - 1) + fa;
    let n_dst = c * (d - 1) + fc;
    if n_src != n_dst {
        return Err(Error::InvalidParams(format!(
            "class counts differ: a(b-1)+f_a = {n_src}, c(d-1)+f_c = {n_dst}"
        )));
    }
    if a.gcd(&c) != 1 || b.gcd(&d) != 1 {
        return Err(Error::InvalidParams(
            "need gcd(a,c) = 1 and gcd(b,d) = 1".into(),
        ));
    }
    let label = format!("F({a},{b},{fa};{c},{d},{fc})");
    if fa == a && fc == c {
        // every class maps to itself in order; the function is n -> n
        return Ok(PermSpec {
            label,
            params: None,
            rules: vec![ResidueRule {
                src_mod: 1,
                src_res: 0,
                dst_mod: 1,
                dst_res: 0,
            }],
        });
    }
    let mut sources: Vec<(u64, u64)> = (0..fa).map(|j| (fa * b, j * b)).collect();
    sources.extend((1..a * b).filter(|r| r % b != 0).map(|r| (a * b, r)));
    let mut targets: Vec<(u64, u64)> = (0..fc).map(|j| (fc * d, j * d)).collect();
    targets.extend((1..c * d).filter(|s| s % d != 0).map(|s| (c * d, s)));
    debug_assert_eq!(sources.len() as u64, n_src);
    debug_assert_eq!(targets.len() as u64, n_dst);
    let rules = sources
        .into_iter()
        .zip(targets)
        .map(|((sm, sr), (dm, dr))| ResidueRule {
            src_mod: sm,
            src_res: sr,
            dst_mod: dm,
            dst_res: dr,
        })
        .collect();
    Ok(PermSpec {
        label,
        params: None,
        rules,
    })
}
