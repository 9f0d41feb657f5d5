use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("stieltjes transform requires a positive argument, got {0}")]
    NonPositiveArgument(f64),

    #[error("invalid spectral measure: {0}")]
    InvalidMeasure(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("{0}")]
    InvalidParameter(String),

    #[error("no sign change of the fixed-point equation on (0, {upper}]")]
    NoBracket { upper: f64 },

    #[error("fixed-point residual {residual:e} not reached after {iterations} iterations")]
    MaxIterations { iterations: usize, residual: f64 },

    #[error("derivative denominator {0:e} is degenerate")]
    DegenerateDenominator(f64),

    #[error("case oracle precondition failed: {0}")]
    CaseMismatch(String),

    #[error("invalid mixing coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("ridge system is not positive definite (n={n}, d={d}, lambda={lambda})")]
    SolveFailure { n: usize, d: usize, lambda: f64 },

    #[error("trial failed at grid index {grid}, trial {trial}: {source}")]
    Trial {
        grid: usize,
        trial: usize,
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::NoBracket { .. }
            | Error::MaxIterations { .. }
            | Error::DegenerateDenominator(_)
            | Error::SolveFailure { .. } => true,
            Error::Trial { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
