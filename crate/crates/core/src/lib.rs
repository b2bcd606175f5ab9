//! Exact computation of ramification invariants for finite Galois extensions
//! of complete discrete valuation fields.
//!
//! The library works with two kinds of ground fields: the p-adic numbers
//! `Q_p` and Laurent series fields `F_p((t))`. Extensions are described as
//! towers of unramified and Eisenstein steps. On top of that it computes
//! Herbrand functions, ramification breaks in the lower and upper numbering,
//! conductors of one-generator covers of the rigid unit disc, and runs a
//! brute-force oracle for the lifting property that characterises the
//! conductor as a truncation exponent.
//!
//! All arithmetic is exact: rationals are arbitrary-precision, field elements
//! carry explicit precision bounds and every valuation returned as "exact" is
//! backed by a certified unit part. Computations that run out of precision
//! escalate and retry from exact input literals instead of silently
//! returning approximations.

pub mod error;
pub mod exactmath;
pub mod localfield;
pub mod galois;
pub mod ramification;
pub mod pm_oracle;
pub mod filtration;
pub mod report;

pub use error::{Error, Result};
pub use exactmath::rat::Rat;
