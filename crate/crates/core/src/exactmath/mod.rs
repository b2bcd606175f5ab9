//! Exact arithmetic building blocks: arbitrary-precision rationals, small
//! finite fields, and piecewise-linear functions over the rationals.

pub mod rat;
pub mod fq;
pub mod plfun;
