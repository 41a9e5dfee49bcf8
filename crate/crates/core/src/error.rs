use thiserror::Error;

/// Errors raised by the toolkit. Every variant is a domain or input error;
/// none of the operations fail for numerical reasons.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("matrix is not symmetric (|a12 - a21| = {0:e})")]
    NotSymmetric(f64),

    #[error("matrix trace is {0}, expected 1")]
    WrongTrace(f64),

    #[error("matrix is indefinite (smallest eigenvalue {0:e})")]
    Indefinite(f64),

    #[error("operator is not an orthogonal projector (defect {0:e})")]
    NotProjector(f64),

    #[error("at least {min} quadrature samples are required, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("interval [{start}, {end}) is not a sub-interval of [0, 2pi)")]
    InvalidInterval { start: f64, end: f64 },

    #[error("intervals [{0}, {1}) and [{2}, {3}) overlap")]
    OverlappingIntervals(f64, f64, f64, f64),

    #[error("harmonic k = {0} appears more than once")]
    DuplicateHarmonic(u32),

    #[error("harmonic indices must be positive")]
    ZeroHarmonic,

    #[error("hidden-variable density integrates to {0}, expected 1")]
    NotNormalized(f64),

    #[error("{0} must be nonempty")]
    Empty(&'static str),

    #[error("malformed Fourier series: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    /// True for malformed input (as opposed to well-formed input outside the
    /// mathematical domain of an operation).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if value >= min && value <= max {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    }
}
