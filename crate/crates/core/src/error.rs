//! Crate-wide error type.
//!
//! `InsufficientPrecision` is special: pipeline drivers catch it, double
//! the working precision and rebuild the computation from exact input
//! literals, turning it into `PrecisionExhausted` only past the hard cap.

use crate::exactmath::fq::FqError;
use crate::exactmath::plfun::PlError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("precision exhausted at {limit} uniformizer digits: {detail}")]
    PrecisionExhausted { limit: i64, detail: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not Eisenstein over the given field: {0}")]
    NotEisenstein(String),
    #[error("polynomial is inseparable")]
    Inseparable,
    #[error("extension is not Galois: found {found} of {degree} roots")]
    NotGalois { found: usize, degree: usize },
    #[error("enumeration of {size} candidates exceeds the configured cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("ring of integers is not generated by the given element: {0}")]
    NotMonogenic(String),
    #[error("asserted identity failed: {0}")]
    IdentityFailure(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Fq(#[from] FqError),
    #[error(transparent)]
    Pl(#[from] PlError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::localfield::scalar::ScalarError> for Error {
    fn from(e: crate::localfield::scalar::ScalarError) -> Self {
        match e {
            crate::localfield::scalar::ScalarError::DivisionByZero => Error::DivisionByZero,
            crate::localfield::scalar::ScalarError::InsufficientPrecision { min_val } => {
                Error::InsufficientPrecision(format!(
                    "value is zero to precision {min_val}; cannot invert"
                ))
            }
        }
    }
}
