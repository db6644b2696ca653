//! Exact-arithmetic analysis of Weyl-Heisenberg (Gabor) systems `(g, a, b)`
//! whose windows are compactly supported step functions.
//!
//! Everything is built on piecewise-constant functions with rational
//! breakpoints.  Scalar values are either exact complex rationals or complex
//! doubles (for windows involving values like `1/sqrt(2)`).  All frame
//! criteria, correlation functions, operator compressions and counterexample
//! constructions reduce to finite computations on common cell refinements,
//! so verdicts in exact mode are certificates, not estimates.

pub mod abc;
pub mod conditions;
pub mod frameset;
pub mod fundamental;
pub mod gabor;
pub mod json;
pub mod par;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod stepfn;
pub mod witnesses;

pub use gabor::{GaborSystem, GkTable};
pub use scalar::{Rat, Scalar};
pub use stepfn::{PeriodicStepFunction, StepFunction};

/// Errors for every constructor and operation in the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("empty interval: lo {0} >= hi {1}")]
    EmptyInterval(String, String),
    #[error("overlapping pieces with conflicting values near {0}")]
    ConflictingOverlap(String),
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(String),
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(String),
    #[error("lattice parameters must be positive")]
    NonPositiveLattice,
    #[error("window must be nonzero")]
    ZeroWindow,
    #[error("test vector must be nonzero")]
    ZeroVector,
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("serialization error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
