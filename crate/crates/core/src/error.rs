use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// Series division with a (numerically) vanishing constant term.
    #[error("division by series with zero constant term (|c0| = {0:e})")]
    ZeroConstantTerm(f64),

    /// Composition with an inner series that does not vanish at 0.
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,

    /// A function expected to be in class 𝒜 (c0 = 0, c1 = 1) is not.
    #[error("series is not normalized: expected c0 = 0 and c1 = 1")]
    NotNormalized,

    /// A Ma–Minda target series must satisfy c0 = 1 and c1 > 0 real.
    #[error("target series is not normalized: {0}")]
    BadNormalization(String),

    /// Membership testing requested for a target without a region predicate.
    #[error("target has no region oracle; membership verdicts are unavailable")]
    NoRegionOracle,

    /// A bound formula's radicand or denominator vanished.
    #[error("bound formula is degenerate (vanishing radicand/denominator)")]
    Degenerate,

    /// Parameter outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
