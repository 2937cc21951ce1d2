//! Error types shared across the crate.

use thiserror::Error;

/// Failures of exact power-series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is zero or unknown")]
    ZeroLeadingCoefficient,
    #[error("series has no known coefficients (order {0})")]
    OrderTooSmall(usize),
    #[error("exp requires a vanishing constant term")]
    NonzeroConstantTerm,
    #[error("log requires constant term 1")]
    ConstantTermNotOne,
    #[error("offsets {0} and {1} do not differ by an integer")]
    IncompatibleOffsets(String, String),
    #[error("reversion requires a zero constant term and a nonzero linear coefficient")]
    ZeroLinearCoefficient,
    #[error("operation requires an integral offset, found {0}")]
    FractionalOffset(String),
    #[error("series has a pole of order {0}; a power series was expected")]
    NegativeValuation(String),
}

/// Failures of numeric special-function evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("precision of {0} digits is below the supported minimum of 30")]
    PrecisionTooLow(u32),
    #[error("argument {0} lies outside the supported convergence region")]
    OutsideDisk(String),
    #[error("lower parameter {0} is a nonpositive integer")]
    NonpositiveIntegerParameter(String),
    #[error("nome must satisfy |q| < 1, got |q| = {0}")]
    NomeOutOfRange(String),
    #[error("Im(tau) must be positive, got {0}")]
    NotInUpperHalfPlane(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailed(String),
    #[error("cannot parse number {0:?}")]
    Parse(String),
}

/// Failures of differential-operator construction and analytic continuation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("leading coefficient of the operator vanishes identically")]
    ZeroLeadingCoefficient,
    #[error("operator of order {0} is not supported here (expected {1})")]
    UnsupportedOrder(usize, usize),
    #[error("path point {point} lies within {distance} of singularity {singularity} (clearance {clearance})")]
    ClearanceViolation {
        point: String,
        singularity: String,
        distance: String,
        clearance: String,
    },
    #[error("step size underflow near {0}")]
    StepUnderflow(String),
    #[error("solution frame is singular (Wronskian vanishes)")]
    SingularFrame,
    #[error("series too short: need {needed} coefficients, have {have}")]
    SeriesTooShort { needed: usize, have: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("base point {0} is not a regular singular point with a maximally unipotent local exponent")]
    NotMaximallyUnipotent(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Failures of finite-field point counting and zeta assembly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bad reduction at p = {p} for lambda = {lambda}")]
    BadReduction { p: u64, lambda: String },
    #[error("p = {p} exceeds the enumeration bound {bound}")]
    BeyondBound { p: u64, bound: u64 },
}

/// Failures in the period and identity layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeriodError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("lambda = 2 is the pole of the quadratic map (t = infinity, psi = 0)")]
    QuadMapPole,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Ode(#[from] OdeError),
}

/// Failures in the L-value and Deligne-period layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeligneError {
    #[error("s = {0} is not a critical value handled here (expected 1 or 2)")]
    UnsupportedS(u32),
    #[error("requested {requested} digits exceeds the configured maximum {max}")]
    PrecisionBudget { requested: u32, max: u32 },
    #[error("requested {requested} digits is below the minimum {min} for this check")]
    TooFewDigits { requested: u32, min: u32 },
    #[error("cross-check {name} failed: residual {residual} exceeds {tolerance}")]
    CrossCheck {
        name: String,
        residual: String,
        tolerance: String,
    },
    #[error("no rational with denominator <= {bound} within {tolerance} of {value}")]
    Reconstruction {
        value: String,
        bound: u64,
        tolerance: String,
    },
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    Ode(#[from] OdeError),
}
