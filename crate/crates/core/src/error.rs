use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("t = {t} lies within the pole exclusion window {window} of an endpoint")]
    PoleExclusion { t: f64, window: f64 },

    #[error("invalid profile: {0}")]
    Validation(String),

    #[error("no interior maximum of the warping function was found")]
    DegenerateProfile,

    #[error("bracket at s = 1 is {bracket} which does not exceed eps = {eps}; the split point h(m) is undefined")]
    ThresholdViolation { bracket: f64, eps: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("quadrature did not converge: error estimate {estimate:e} after {panels} panels")]
    Quadrature { estimate: f64, panels: usize },

    #[error("contradiction: {0}")]
    Contradiction(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
