//! Textual permutation selectors.
//!
//! Grammar:
//!
//! - `pabcd:a,b,c,d` builds the canonical four-parameter permutation;
//! - `pabcd:a,b,c,d/simple:rank` or `.../ext:rank` picks the generalization
//!   with that lexicographic rank;
//! - `fafc:a,b,fa,c,d,fc` builds the mixed-splitting table;
//! - `primecomp` is the prime/composite interleaving;
//! - `file:path.json` loads a serialized rule table and verifies it.

use std::fmt;
use std::fs;

use permseq_core::perm::{
    generalize, make_fafc, make_pabcd, rank_to_order, verify_bijection, GenMode, PabcdParams,
    PermSpec, Permutation, PrimeCompositePerm,
};
use permseq_core::{Nat, Result as CoreResult};

/// A command-line mistake: bad grammar, unknown name, out-of-range rank.
/// Reported with exit code 64.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// A parsed selector, ready to iterate.
pub struct Selected {
    pub perm: Box<dyn Permutation>,
    /// The rule table behind `perm`, absent for procedural permutations.
    pub spec: Option<PermSpec>,
}

impl Selected {
    fn from_spec(spec: PermSpec) -> Selected {
        Selected {
            perm: Box::new(spec.clone()),
            spec: Some(spec),
        }
    }

    /// Family parameters, when the selector named a plain `pabcd` table.
    pub fn params(&self) -> Option<PabcdParams> {
        self.spec.as_ref().and_then(|s| s.params)
    }

    pub fn label(&self) -> String {
        self.perm.label().to_string()
    }

    /// Swaps the forward and backward directions.
    pub fn invert(self) -> Selected {
        match self.spec {
            Some(spec) => Selected::from_spec(spec.inverse()),
            None => {
                let label = format!("{}^-1", self.perm.label());
                Selected {
                    perm: Box::new(Flip {
                        inner: self.perm,
                        label,
                    }),
                    spec: None,
                }
            }
        }
    }
}

/// Inverse view of a procedural permutation.
struct Flip {
    inner: Box<dyn Permutation>,
    label: String,
}

impl Permutation for Flip {
    fn apply(&self, x: &Nat) -> CoreResult<Nat> {
        self.inner.apply_inv(x)
    }

    fn apply_inv(&self, x: &Nat) -> CoreResult<Nat> {
        self.inner.apply(x)
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn class_modulus(&self) -> u64 {
        self.inner.class_modulus()
    }
}

pub fn parse_selector(text: &str) -> Result<Selected, UsageError> {
    let (kind, rest, rest_at) = match text.find(':') {
        Some(i) => (&text[..i], &text[i + 1..], i + 1),
        None => (text, "", text.len()),
    };
    match kind {
        "pabcd" => parse_pabcd(text, rest, rest_at),
        "fafc" => {
            let nums = parse_numbers(text, rest, rest_at, 6)?;
            make_fafc(nums[0], nums[1], nums[2], nums[3], nums[4], nums[5])
                .map(Selected::from_spec)
                .map_err(|e| usage(format!("selector {text:?}: {e}")))
        }
        "primecomp" if rest.is_empty() => Ok(Selected {
            perm: Box::new(PrimeCompositePerm::new()),
            spec: None,
        }),
        "primecomp" => Err(usage(format!(
            "selector {text:?}: primecomp takes no arguments (unexpected text at position {rest_at})"
        ))),
        "file" => load_file(rest),
        _ => Err(usage(format!(
            "selector {text:?}: unknown kind {kind:?} at position 0 \
             (expected pabcd, fafc, primecomp, or file)"
        ))),
    }
}

fn parse_pabcd(text: &str, rest: &str, rest_at: usize) -> Result<Selected, UsageError> {
    let (head, suffix) = match rest.split_once('/') {
        Some((h, s)) => (h, Some((s, rest_at + h.len() + 1))),
        None => (rest, None),
    };
    let nums = parse_numbers(text, head, rest_at, 4)?;
    let base = make_pabcd(nums[0], nums[1], nums[2], nums[3])
        .map_err(|e| usage(format!("selector {text:?}: {e}")))?;
    let Some((suffix, at)) = suffix else {
        return Ok(Selected::from_spec(base));
    };
    let (mode_txt, rank_txt) = suffix.split_once(':').ok_or_else(|| {
        usage(format!(
            "selector {text:?}: expected simple:rank or ext:rank at position {at}"
        ))
    })?;
    let mode = match mode_txt {
        "simple" => GenMode::Simple,
        "ext" => GenMode::Extended,
        other => {
            return Err(usage(format!(
                "selector {text:?}: unknown generalization mode {other:?} at position {at}"
            )))
        }
    };
    let rank_at = at + mode_txt.len() + 1;
    let rank: u128 = rank_txt.parse().map_err(|_| {
        usage(format!(
            "selector {text:?}: expected an integer rank at position {rank_at}, found {rank_txt:?}"
        ))
    })?;
    let movable = match mode {
        GenMode::Simple => base.rules.len() - 1,
        GenMode::Extended => base.rules.len(),
    };
    let order = rank_to_order(rank, movable)
        .and_then(|order| generalize(&base, &order, mode))
        .map_err(|e| usage(format!("selector {text:?}: {e}")))?;
    Ok(Selected::from_spec(order))
}

fn parse_numbers(
    text: &str,
    list: &str,
    list_at: usize,
    want: usize,
) -> Result<Vec<u64>, UsageError> {
    let mut nums = Vec::with_capacity(want);
    let mut at = list_at;
    for token in list.split(',') {
        let v: u64 = token.parse().map_err(|_| {
            usage(format!(
                "selector {text:?}: expected an integer at position {at}, found {token:?}"
            ))
        })?;
        nums.push(v);
        at += token.len() + 1;
    }
    if nums.len() != want {
        return Err(usage(format!(
            "selector {text:?}: expected {want} comma-separated integers, found {}",
            nums.len()
        )));
    }
    Ok(nums)
}

fn load_file(path: &str) -> Result<Selected, UsageError> {
    let data =
        fs::read_to_string(path).map_err(|e| usage(format!("selector file {path:?}: {e}")))?;
    let spec: PermSpec = serde_json::from_str(&data)
        .map_err(|e| usage(format!("selector file {path:?}: {e}")))?;
    let report =
        verify_bijection(&spec).map_err(|e| usage(format!("selector file {path:?}: {e}")))?;
    if !report.is_bijection {
        return Err(usage(format!(
            "selector file {path:?}: rules are not a bijection \
             (sources cover ℕ₀: {}, targets cover ℕ₀: {})",
            report.sources.valid, report.targets.valid
        )));
    }
    Ok(Selected::from_spec(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_families_parse() {
        let s = parse_selector("pabcd:2,4,3,3").unwrap();
        assert_eq!(s.label(), "P(2,4,3,3)");
        assert_eq!(s.params().unwrap().b, 4);

        let f = parse_selector("fafc:10,8,5,9,9,3").unwrap();
        assert_eq!(f.spec.unwrap().rules.len(), 75);

        let p = parse_selector("primecomp").unwrap();
        assert!(p.spec.is_none());
        assert_eq!(p.perm.apply(&Nat::from(4u64)).unwrap(), Nat::from(3u64));
    }

    #[test]
    fn generalization_suffix_applies_the_ranked_order() {
        let s = parse_selector("pabcd:2,2,1,3/simple:1").unwrap();
        assert_eq!(s.label(), "P(2,2,1,3)/simple:1");
        // the swap sends 4n+1 to 3n+2
        assert_eq!(s.perm.apply(&Nat::from(1u64)).unwrap(), Nat::from(2u64));
        assert!(s.params().is_none());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_selector("pabcd:1,3,x,2").err().unwrap().to_string();
        assert!(err.contains("position 10"), "{err}");
        let err = parse_selector("pabcd:2,2,1,3/simple:0").err().unwrap();
        assert!(err.to_string().contains("identity"), "{err}");
        assert!(parse_selector("sieve:3").is_err());
    }

    #[test]
    fn inversion_swaps_directions() {
        let s = parse_selector("pabcd:1,3,2,2").unwrap().invert();
        // the inverse acts as the Collatz permutation: 2n -> 3n
        assert_eq!(s.perm.apply(&Nat::from(8u64)).unwrap(), Nat::from(12u64));
        let p = parse_selector("primecomp").unwrap().invert();
        assert_eq!(p.perm.apply(&Nat::from(3u64)).unwrap(), Nat::from(4u64));
        assert_eq!(p.label(), "primecomp^-1");
    }
}
