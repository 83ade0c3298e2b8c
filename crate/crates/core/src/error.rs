use thiserror::Error;

/// Errors produced by the stellar-representation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero state")]
    ZeroState,
    #[error("non-finite amplitude or coefficient")]
    NonFinite,
    #[error("state is not normalized: norm² = {0}")]
    NotNormalized(f64),
    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: operator is {operator}, state is {state}")]
    DimensionMismatch { operator: usize, state: usize },
    #[error("invalid spin: 2s = {0} (need 2s >= 1)")]
    InvalidSpin(u32),
    #[error("star count mismatch: {prev} vs {next}")]
    StarCountMismatch { prev: usize, next: usize },
    #[error("too many stars to match exactly: {0}")]
    TooManyStars(usize),
    #[error("degenerate closed form; use numeric pipeline")]
    DegenerateClosedForm,
    #[error("start < stop required")]
    InvalidRange,
    #[error("at least 2 grid steps required, got {0}")]
    TooFewSteps(usize),
    #[error("{0}")]
    InvalidSweep(String),
    #[error("eigenvalue solver did not converge")]
    NoConvergence,
}

pub type Result<T> = std::result::Result<T, Error>;
