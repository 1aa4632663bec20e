use thiserror::Error;

/// Errors raised by the force evaluators and their inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid material `{label}`: {}", .problems.join("; "))]
    InvalidMaterial { label: String, problems: Vec<String> },

    #[error("permittivity of an ideal metal cannot be evaluated numerically")]
    UnsupportedEvaluation,

    #[error("invalid quadrature settings: {}", .0.join("; "))]
    InvalidSettings(Vec<String>),

    #[error("integration did not converge ({context}): {detail}")]
    NonConvergence { context: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
