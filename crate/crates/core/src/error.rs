use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NonSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix has no states")]
    Empty,
    #[error("label count {labels} does not match state count {states}")]
    LabelMismatch { labels: usize, states: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("row {row} sums to {} instead of 1", 1.0 + .deviation)]
    RowSumViolation { row: usize, deviation: f64 },
    #[error("entry ({row}, {col}) is negative: {value}")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("stationary distribution is not unique")]
    NonUniqueStationary,
    #[error("stationary distribution fails pi P = pi by {residual:e}")]
    StationaryResidual { residual: f64 },
    #[error("eigensolver failed: {0}")]
    EigensolverFailure(String),
    #[error("state {state} has zero stationary mass")]
    ZeroStationaryMass { state: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a probability vector: {0}")]
    NotAProbabilityVector(String),
    #[error("compute budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("profile horizon {horizon} too short: final value {last} > epsilon {epsilon}")]
    HorizonTooShort { horizon: usize, last: f64, epsilon: f64 },
    #[error("epsilon {epsilon} outside {range}")]
    EpsilonOutOfRange { epsilon: f64, range: &'static str },
    #[error("pi_min is zero, bound is infinite")]
    ZeroPiMin,
    #[error("relaxation time is infinite (beta_star = 1)")]
    InfiniteRelaxation,
    #[error("t = {t} is below N - 1 = {min}")]
    TimeTooSmall { t: usize, min: usize },
    #[error("beta {value} at index {index} outside [0, 1)")]
    BetaOutOfRange { index: usize, value: f64 },
    #[error("betas are not weakly increasing at index {index}")]
    NotSorted { index: usize },
    #[error("Chernoff delta is negative: (1 - beta_star) t < N - 2")]
    DeltaNegative,
    #[error("state space of size {n} exceeds the limit {limit}")]
    StateSpaceTooLarge { n: usize, limit: usize },
    #[error("Cheeger constant is zero")]
    ZeroPhi,
    #[error("alpha = 1: the multiplicative reversibilization does not mix")]
    AlphaOne,
    #[error("spectrum is not real and nonnegative: eigenvalue {re}{im:+}i")]
    NegativeSpectrum { re: f64, im: f64 },
    #[error("link entry ({row}, {col}) is negative: {value:e}")]
    NegativeLinkEntry { row: usize, col: usize, value: f64 },
    #[error("eigenvalue {beta} is within tolerance of 1")]
    DegenerateGap { beta: f64 },
    #[error("last link row differs from pi by {deviation:e}")]
    LinkTerminalMismatch { deviation: f64 },
    #[error("chain is not skip-free: P({row}, {col}) > 0")]
    NotSkipFree { row: usize, col: usize },
    #[error("index ({i}, {j}) out of range 1..={m}")]
    IndexOutOfRange { i: usize, j: usize, m: usize },
    #[error("hook leg {leg} exceeds alphabet size {m}")]
    LegTooLong { leg: usize, m: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// Input problems (bad files, bad parameters) as opposed to failures of a
    /// computation on valid input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonSquare { .. }
                | Error::Empty
                | Error::LabelMismatch { .. }
                | Error::NonFinite { .. }
                | Error::RowSumViolation { .. }
                | Error::NegativeEntry { .. }
                | Error::Parse { .. }
                | Error::InvalidParameter(_)
                | Error::InvalidShape(_)
                | Error::BetaOutOfRange { .. }
                | Error::NotSorted { .. }
                | Error::DimensionMismatch { .. }
                | Error::NotAProbabilityVector(_)
                | Error::EpsilonOutOfRange { .. }
                | Error::IndexOutOfRange { .. }
                | Error::LegTooLong { .. }
        )
    }
}
