use thiserror::Error;

/// Errors raised by the model, dynamics, analysis and wavefunction routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are individually valid but inconsistent with each other.
    #[error("contract error: {0}")]
    Contract(String),

    /// The integrator produced a non-finite value.
    #[error("numerical error at t = {t:?}: {msg}")]
    Numerical { t: f64, msg: String },

    /// A root search could not bracket or converge.
    #[error("search error: {0}")]
    Search(String),

    /// Evaluation at a singular point of a closed-form expression.
    #[error("singularity: {0}")]
    Singularity(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
