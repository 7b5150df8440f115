use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the numerical library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exponential argument exceeded the configured cap.
    #[error(
        "range error: {quantity} = {value} V gives exp argument {argument:.3} above cap {cap}"
    )]
    Range {
        quantity: &'static str,
        value: f64,
        argument: f64,
        cap: f64,
    },

    /// The operating-point iteration did not reach its residual tolerance.
    #[error(
        "solver did not converge after {iterations} iterations (last residual {residual:e} A)"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    /// A coefficient computation failed for one labelled period of a series.
    #[error("period '{label}': {source}")]
    Period {
        label: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn in_period(self, label: &str) -> Self {
        Error::Period {
            label: label.to_string(),
            source: Box::new(self),
        }
    }
}
