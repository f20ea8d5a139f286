use num_bigint::BigInt;

/// Errors shared by every layer of the crate.
///
/// `NeedsPrecision` drives escalation: a caller holding refinable inputs
/// doubles the working bit count and retries. Once the cap is hit the
/// failure becomes `PrecisionExhausted` and is final.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("discriminant {disc} is not positive, the cubic is not totally real")]
    NotTotallyReal { disc: BigInt },

    #[error("coefficient of X^{power} is {num}/{den}, not an integer")]
    NonIntegralCoefficient { power: u32, num: BigInt, den: BigInt },

    #[error("parameters ({a}, {b}) are not coprime")]
    NotCoprime { a: BigInt, b: BigInt },

    #[error("({a}, {b}) is not a mutually cubic pair")]
    NotMutuallyCubic { a: BigInt, b: BigInt },

    #[error("norm of {element} is {norm}, not a unit")]
    NotAUnit { element: String, norm: String },

    #[error("polynomial has a rational root")]
    Reducible,

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enclosure too coarse at {bits} bits: {context}")]
    NeedsPrecision { bits: u32, context: String },

    #[error("no decision at the {cap}-bit precision cap: {context}")]
    PrecisionExhausted { cap: u32, context: String },

    #[error("certificate needs discriminant > 16, got {disc}")]
    CertificateNotApplicable { disc: BigInt },

    #[error("fundamental-unit certificate not granted: {0}")]
    NotCertified(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Stable short code for record columns and exit-status logic.
    pub fn short_code(&self) -> &'static str {
        match self {
            Error::NotTotallyReal { .. } => "not-totally-real",
            Error::NonIntegralCoefficient { .. } => "non-integral-coefficient",
            Error::NotCoprime { .. } => "not-coprime",
            Error::NotMutuallyCubic { .. } => "not-mutually-cubic",
            Error::NotAUnit { .. } => "not-a-unit",
            Error::Reducible => "reducible",
            Error::Domain(_) => "domain",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::NeedsPrecision { .. } => "needs-precision",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::CertificateNotApplicable { .. } => "certificate-not-applicable",
            Error::NotCertified(_) => "not-certified",
            Error::Inconsistency(_) => "inconsistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
