use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A distribution or procedure parameter is out of range.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    /// An argument lies outside the domain of the function.
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The sample is too small for the requested computation.
    #[error("sample size {n} is too small: at least {min} observations are required")]
    SampleSize { n: usize, min: usize },

    /// An observation is not a strictly positive finite number.
    #[error("observation {index} is {value}, observations must be finite and strictly positive")]
    Data { index: usize, value: f64 },

    /// The intercept estimate is not positive, so the tail index is undefined.
    #[error("degenerate fit: intercept estimate {beta0} leaves the tail index undefined")]
    DegenerateFit { beta0: f64 },

    /// A distribution string could not be parsed.
    #[error("unknown distribution `{0}` (expected pareto:ALPHA:X0, lognormal:SIGMA, exp, gamma:SHAPE or logweibull:THETA)")]
    UnknownDistribution(String),

    /// Input data could not be read or parsed.
    #[error("{source_name}:{line}: {reason}")]
    Input {
        source_name: String,
        line: usize,
        reason: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    /// Too many replications of a power-study cell failed.
    #[error("cell {label} at n = {n} aborted: {failed} of {replications} replications failed (last error: {last})")]
    CellAborted {
        label: String,
        n: usize,
        failed: usize,
        replications: usize,
        last: String,
    },
}

impl Error {
    pub(crate) fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
