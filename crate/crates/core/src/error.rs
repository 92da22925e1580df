use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{family} does not support {what}")]
    Capability { family: String, what: &'static str },

    #[error("accuracy target missed: best estimate {estimate:e} with error bound {error:e} ({context})")]
    Accuracy {
        estimate: f64,
        error: f64,
        context: String,
    },

    #[error("positivity violated: {context} (value {value:e})")]
    Positivity { value: f64, context: String },

    #[error("assumption violated: {0}")]
    Assumption(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(estimate: f64, error: f64, context: impl Into<String>) -> Self {
        Error::Accuracy {
            estimate,
            error,
            context: context.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
