use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    IncompatibleRadicands(String, String),
    #[error("integer square root of a negative number")]
    NegativeInput,
    #[error("empty interval: lower bound is not below upper bound")]
    EmptyInterval,
    #[error("parameter must be positive")]
    NonPositiveAlpha,
    #[error("stored digits of `{0}` are insufficient to certify the floor")]
    PrecisionExhausted(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{0}/{1} is an integer")]
    IntegerParameter(u64, u64),
    #[error("n = {n} lies outside the window [0, {limit})")]
    OutOfWindow { n: u64, limit: u64 },
    #[error("1 + 4*{0} is a perfect square, so the golden parameter is rational")]
    RationalDegenerate(u64),
    #[error("parameter must be irrational")]
    RationalAlpha,
    #[error("{0}*{1} is a perfect square")]
    PerfectSquare(u64, u64),
    #[error("closed-form range predictions disagree for {0}")]
    PredictionConflict(String),
    #[error("value does not fit in a machine integer")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("cannot write {path}: {reason}")]
    FileWrite { path: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
