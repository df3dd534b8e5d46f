use thiserror::Error;

/// Errors raised by the library. Verdicts (invariant / not invariant /
/// degenerate) are not errors and live in [`crate::invariance::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate field: discriminant {0} is not a positive non-square")]
    DegenerateField(String),
    #[error("operands belong to different quadratic fields")]
    FieldMismatch,
    #[error("{value} is not in (1/{q})Z[e]")]
    NotInLattice { value: String, q: String },
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("slope {0} is rational; the exchange is not minimal")]
    RationalSlope(String),
    #[error("{0} lies outside the domain")]
    OutOfDomain(String),
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("window does not contain 0: {0}")]
    InvalidWindow(String),
    #[error("eta = {0} lies in (-1, 0)")]
    DangerousEta(String),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("interval [{lo}, {hi}) crosses the discontinuity {at}")]
    StraddlesDiscontinuity { lo: String, hi: String, at: String },
    #[error("walk exceeded the step budget of {0}")]
    StepBudgetExceeded(u64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("synthesis failed verification: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
