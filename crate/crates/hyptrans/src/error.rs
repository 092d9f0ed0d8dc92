use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at argument {0}")]
    Pole(f64),

    #[error("result overflows f64 (log-magnitude {0})")]
    Overflow(f64),

    #[error("series did not converge after {terms} terms ({what})")]
    Convergence { what: &'static str, terms: usize },

    #[error("argument {x} outside the domain of {what}")]
    Domain { what: String, x: f64 },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("integrand not integrable: {0}")]
    NonIntegrable(String),

    #[error("quadrature did not converge: best estimate {value} with error estimate {err_est}")]
    NoConvergence { value: f64, err_est: f64 },

    #[error("sampler exhausted for {0}")]
    SamplerExhausted(String),

    #[error("unknown identity {0}")]
    UnknownIdentity(String),

    #[error("unknown transmutation case {0}")]
    UnknownCase(String),

    #[error("cannot parse expression {0:?}")]
    Parse(String),
}

impl Error {
    /// Short stable name used in reports.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Overflow(_) => "OverflowError",
            Error::Convergence { .. } => "ConvergenceError",
            Error::Domain { .. } => "DomainError",
            Error::Constraint(_) => "ConstraintError",
            Error::NonIntegrable(_) => "NonIntegrableError",
            Error::NoConvergence { .. } => "NoConvergenceError",
            Error::SamplerExhausted(_) => "SamplerExhaustedError",
            Error::UnknownIdentity(_) => "UnknownIdentityError",
            Error::UnknownCase(_) => "UnknownCaseError",
            Error::Parse(_) => "ParseError",
        }
    }

    pub(crate) fn domain(what: impl Into<String>, x: f64) -> Self {
        Error::Domain { what: what.into(), x }
    }
}
