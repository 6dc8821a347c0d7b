use thiserror::Error;

/// Errors raised by the Casimir engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The Drude permittivity diverges at ξ = 0; the analytic zero-mode
    /// limit of the reflection module has to be used instead.
    #[error("Drude permittivity is singular at zero frequency")]
    ZeroFrequency,

    /// ζ = 0 together with Z = 0 leaves the TE coefficient undefined; the
    /// caller has to pick a zero-frequency rule.
    #[error("impedance reflection coefficient is indeterminate at zero frequency with Z = 0")]
    IndeterminateZeroMode,

    #[error(
        "T = {temperature} K is below the direct summation limit {limit} K; \
         use the low-temperature asymptotics"
    )]
    BelowSummationLimit { temperature: f64, limit: f64 },

    #[error("non-finite result: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
