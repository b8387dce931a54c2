use crate::kernels::EvalOutcome;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by the kernels, the double-series evaluators, the
/// representation evaluators, the formal oracle, and the verification harness.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter sits on (or leads to) a pole of the requested function,
    /// series, or identity.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument lies outside the validity region of the chosen
    /// representation (e.g. division by an argument too close to zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// The stopping rule did not fire within `max_terms`. Carries the partial
    /// result so callers can still inspect truncated sums.
    #[error("series did not converge after {} terms", partial.terms)]
    NotConverged { partial: EvalOutcome },

    /// A floating accumulation left the representable range.
    #[error("non-finite value while {0}")]
    NonFinite(String),

    /// A formal-oracle expansion was requested beyond the degree cap.
    #[error("degree cap exceeded: {0}")]
    CapExceeded(String),

    /// Malformed grid specification or CLI configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}
