//! Sparse multivariate polynomials and unreduced rational functions over a
//! finite field, in variables `y_1, ..., y_n` (stored 0-based).

mod poly;
mod ratfunc;

pub use poly::{Exps, MultiPoly};
pub use ratfunc::RatFunc;

/// Exponents above this are refused.
pub const EXPONENT_CAP: u64 = 1 << 31;
