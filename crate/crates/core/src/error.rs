use thiserror::Error;

use crate::quadrature::QuadratureResult;

/// Errors raised by the verification toolkit.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function (e.g. a radius `t <= 0`).
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A closed-form evaluation left the double-precision range.
    #[error("overflow in {op}: {detail}")]
    Overflow { op: &'static str, detail: String },

    /// Parameters violate the range for which an inequality family is stated.
    #[error("invalid parameters for {family}: {reason}")]
    Validity { family: String, reason: String },

    /// A caller broke an operation contract (smoothness, derivative order, support).
    #[error("contract violated: {0}")]
    Contract(String),

    /// Adaptive integration hit its subdivision limit.
    #[error("quadrature did not converge after {} evaluations (value {}, error estimate {})", .best.evaluations, .best.value, .best.error_estimate)]
    NonConvergence { best: QuadratureResult },

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    /// A corpus id string could not be parsed.
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn validity(family: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validity {
            family: family.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
