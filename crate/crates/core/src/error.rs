use thiserror::Error;

/// Every failure the library reports. Each variant maps to a stable
/// machine-readable code (see [`Error::code`]) used by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),
    #[error("degenerate state: {0}")]
    DegenerateState(String),
    #[error("insufficient grid resolution: {0}")]
    Resolution(String),
    #[error("aliasing: {0}")]
    Aliasing(String),
    #[error("grid is not symmetric about the origin: {0}")]
    GridSymmetry(String),
    #[error("time too close to a caustic: {0}")]
    NearCaustic(String),
    #[error("grid does not cover the state: {0}")]
    GridCoverage(String),
    #[error("state is not normalized: {0}")]
    Normalization(String),
    #[error("spectral truncation too large: {0}")]
    Truncation(String),
    #[error("uncertainty relation violated: {0}")]
    UncertaintyViolation(String),
    #[error("degenerate moments: {0}")]
    Moment(String),
    #[error("interpolation inaccurate: {0}")]
    Interpolation(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::IncompatibleOperands(_) => "incompatible-operands",
            Error::DegenerateState(_) => "degenerate-state",
            Error::Resolution(_) => "resolution-error",
            Error::Aliasing(_) => "aliasing-error",
            Error::GridSymmetry(_) => "grid-symmetry-error",
            Error::NearCaustic(_) => "near-caustic-error",
            Error::GridCoverage(_) => "grid-coverage-error",
            Error::Normalization(_) => "normalization-error",
            Error::Truncation(_) => "truncation-error",
            Error::UncertaintyViolation(_) => "uncertainty-violation",
            Error::Moment(_) => "moment-error",
            Error::Interpolation(_) => "interpolation-error",
            Error::Io(_) => "io-error",
            Error::Parse(_) => "parse-error",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
