//! Error type shared by every evaluation path.

/// Errors surfaced by the numerical engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violated a structural invariant (listed in the message).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An iterative evaluation exhausted its budget without converging.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// The closed-form intercept probability requires integer Nakagami m.
    #[error("link {link} has non-integer fading parameter m = {m}; the closed-form path requires integer m")]
    NonIntegerM { link: &'static str, m: f64 },

    /// The high-SNR ceiling is infinite (static link with perfect CSI), so
    /// the mobile/imperfect-CSI asymptote does not exist.
    #[error("effective-SNR ceiling undefined on link {0}: rho = 1 and zero estimation noise")]
    CeilingUndefined(&'static str),

    /// A scenario-specific precondition does not hold for this configuration.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A raw probability landed outside [-1e-9, 1 + 1e-9] before clamping,
    /// which indicates a genuine numerical failure rather than rounding.
    #[error("internal consistency: raw intercept probability {raw:e} outside [-1e-9, 1+1e-9]")]
    Consistency { raw: f64 },

    /// A log-space intermediate left the representable range.
    #[error("numerical overflow in {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
