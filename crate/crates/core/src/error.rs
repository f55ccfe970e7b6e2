use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the quantity being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The closed form has a removable or true singularity at this point
    /// (for example photon subtraction with zero reference squeezing).
    #[error("singular configuration: {0}")]
    Singularity(String),

    /// A result is smaller than the rounding error of the terms it is
    /// computed from.
    #[error("precision lost to cancellation: {0}")]
    Cancellation(String),

    /// The Fock-space cutoff is too small for the requested accuracy.
    #[error("Fock cutoff {n_max} is insufficient, at least {required} is needed")]
    Truncation { n_max: usize, required: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }

    /// `true` for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Singularity(_) | Error::Cancellation(_) | Error::Truncation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
