use thiserror::Error;

/// Errors shared across the crate. Variant names are stable: the CLI maps
/// them into structured error objects by name.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A certified interval straddles a decision boundary; the caller may
    /// retry at higher precision.
    #[error("ambiguous choice: {0}")]
    AmbiguousChoice(String),

    /// Precision was raised up to the configured cap and a decision still
    /// could not be certified.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A convergent denominator q_n vanished at the given step.
    #[error("zero denominator at index {index}")]
    ZeroDenominator { index: usize },

    #[error("division by zero")]
    DivisionByZero,

    /// The quadratic factors over the Gaussian rationals.
    #[error("polynomial has a rational root")]
    RationalRoot,

    /// The quadratic has a repeated root.
    #[error("degenerate discriminant")]
    DegenerateDisc,

    /// The supplied approximation does not single out one root.
    #[error("branch approximation is ambiguous")]
    AmbiguousBranch,

    /// Period detection did not find a repeat within the step budget.
    #[error("exceeded budget after {steps} steps")]
    ExceededBudget { steps: usize },

    /// No admissible bridge entry was found within the candidate budget.
    #[error("bridge search failed at junction {junction}")]
    BridgeSearchFailed { junction: usize },

    /// A Moebius map was evaluated at its pole.
    #[error("pole hit")]
    PoleHit,

    /// Probe input violates a required shape constraint.
    #[error("shape violation: {0}")]
    ShapeViolation(String),

    /// |z_n| = 1 cannot be certified from approximate data; the degeneracy
    /// verdict is withheld.
    #[error("inexact degeneracy test at index {index}")]
    InexactDegeneracy { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
