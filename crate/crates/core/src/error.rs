use thiserror::Error;

use crate::poly::Angle;

/// Every failure mode of the library. Indeterminate outcomes are errors only
/// where a definite answer is part of the contract; verdict-producing
/// operations report indeterminacy in their result instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("operation needs a non-constant polynomial")]
    DegreeZero,
    #[error("sign could not be resolved at the precision ceiling of {bits} bits")]
    SignIndeterminate { bits: u32 },
    #[error("Sturm chain degenerated: the polynomial is not square-free")]
    DegenerateChain,
    #[error("the polynomial has a zero on the ray at angle {theta}")]
    ZeroOnRay { theta: Angle },
    #[error("n*theta/pi is an integer (n = {n}, theta = {theta})")]
    DegenerateAngle { n: usize, theta: Angle },
    #[error("zero enclosures of the two lists could not be separated")]
    OverlappingEnclosures,
    #[error("generator gave up after {attempts} attempts")]
    GenerationExhausted { attempts: usize },
    #[error("root enclosures could not be certified: {0}")]
    CertificationFailed(String),
    #[error("polynomial has a negative coefficient")]
    NotNonNegative,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("angle {0} is outside (0, pi]")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
