use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Gamma or beta evaluated on a non-positive integer.
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    /// Harvest threshold at or above the rectenna saturation level.
    #[error("energy threshold {eps} W must be below the rectenna saturation level {bound} W")]
    Saturation { eps: f64, bound: f64 },

    #[error("quadrature did not converge after {panels} panels (t = {t}, tail bound {tail})")]
    Convergence { panels: usize, t: f64, tail: f64 },

    /// A probability left [0, 1] by more than the numerical tolerance allows.
    #[error("probability {value} outside [0, 1] beyond tolerance {tol}")]
    ProbabilityExcursion { value: f64, tol: f64 },

    #[error("{key}: {msg}")]
    Range { key: String, msg: String },

    #[error("line {line}: {key}: {msg}")]
    Parse { line: usize, key: String, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn range(key: &str, msg: impl Into<String>) -> Self {
        Error::Range {
            key: key.to_string(),
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
