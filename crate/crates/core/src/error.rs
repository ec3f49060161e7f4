use thiserror::Error;

/// Unified error type for the whole crate.
///
/// The variants fall into three classes, which front-ends map to distinct
/// exit codes: invalid input (malformed text, out-of-range parameters),
/// failed mathematical preconditions (the input is a legal polynomial but
/// not of the kind an operation supports), and internal assertion breaches
/// (an invariant the implementation relies on appears to be violated,
/// which means a bug, never a property of the input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("alpha must satisfy 0 < alpha <= 1, got {0}")]
    AlphaOutOfRange(String),

    #[error("f is not weighted homogeneous: {0}")]
    NotWeightedHomogeneous(String),

    #[error("weight system is underdetermined; supply weights explicitly")]
    UnderdeterminedWeights,

    #[error("singularity is not isolated: Jacobian quotient still growing at truncation degree {cap}")]
    NotIsolated { cap: usize },

    #[error("operation requires a weighted homogeneous divisor")]
    WeightedModeOnly,

    #[error("Newton polyhedron is not convenient: {0}")]
    NotConvenient(String),

    #[error("Newton boundary is degenerate: {0}")]
    DegenerateNewton(String),

    #[error("ambient dimension {n} exceeds the supported cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("support size {size} exceeds the supported cap {cap}")]
    SupportCap { size: usize, cap: usize },

    #[error("mismatched truncation data: {0}")]
    TruncationMismatch(String),

    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    /// True for errors caused by malformed input text or parameters.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Invalid(_) | Error::AlphaOutOfRange(_)
        )
    }

    /// True for failed mathematical preconditions on well-formed input.
    pub fn is_precondition_error(&self) -> bool {
        matches!(
            self,
            Error::NotWeightedHomogeneous(_)
                | Error::UnderdeterminedWeights
                | Error::NotIsolated { .. }
                | Error::WeightedModeOnly
                | Error::NotConvenient(_)
                | Error::DegenerateNewton(_)
                | Error::DimensionCap { .. }
                | Error::SupportCap { .. }
        )
    }

    /// True when an internal invariant was violated (always a bug).
    pub fn is_assertion(&self) -> bool {
        matches!(self, Error::Assertion(_) | Error::TruncationMismatch(_))
    }
}
