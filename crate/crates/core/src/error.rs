//! Error type shared by all pipeline stages.

use thiserror::Error;

/// Errors raised by model construction, quantization, and the zeta pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the declared domain (parameter ranges, sizes, windows).
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix or chain violates a structural requirement (block pattern,
    /// stochasticity, probability mass on a non-arc).
    #[error("structure error: {0}")]
    Structure(String),

    /// Two independent constructions of the same object disagree.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// A proven identity failed numerically beyond tolerance.
    #[error("identity violation: {0}")]
    IdentityViolation(String),

    /// No (C, D) with C = ±1 satisfies f(1/x) = C x^-D f(x).
    #[error("not an absolute automorphic form")]
    NotAutomorphic,

    /// The rational function has a factor that is not cyclotomic.
    #[error("not cyclotomic: {0}")]
    NotCyclotomic(String),

    /// Only the negation of the function matches the cyclotomic product shape.
    #[error("sign mismatch: only -f is representable in the cyclotomic product form")]
    SignMismatch,

    /// The candidate (l, m, n) data does not reassemble into the input.
    #[error("form mismatch: {0}")]
    FormMismatch(String),

    /// Evaluation point too close to a pole of the zeta ladder.
    #[error("pole at s = {pole}: evaluation point {s} within {dist:e}")]
    Pole { s: f64, pole: f64, dist: f64 },

    /// Argument outside the evaluable window of a special function.
    #[error("window violation: {0}")]
    Window(String),

    /// Continued-fraction reconstruction found no admissible rational.
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),

    /// An exact-mode operation needs a square root that is not rational;
    /// callers downgrade to float and report the notice.
    #[error("exact arithmetic unavailable: {0}")]
    ExactnessLost(String),

    /// Matrix dimension over the configured cap.
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    /// Malformed input file or unparseable payload.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 2 for validation
    /// problems, 3 when a mathematical identity failed beyond tolerance.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) | Error::IdentityViolation(_) => 3,
            _ => 2,
        }
    }
}
