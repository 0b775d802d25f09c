use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Construction parameters violate a precondition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A rule table does not describe a bijection on the naturals.
    #[error("not a permutation: {0}")]
    NotPermutation(String),

    /// No residue rule matches the given input.
    #[error("no rule matches input {0}")]
    NoRule(String),

    /// Working precision was insufficient to decide a comparison.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A numeric solver failed to locate a root.
    #[error("no crossing found: {0}")]
    NoCrossing(String),

    /// A configured resource ceiling (sieve size, lcm, step budget) was hit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
