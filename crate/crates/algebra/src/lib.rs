//! Exact algebra kernel: adaptive integers, rationals, sparse multivariate
//! polynomials over a fixed alphabet, gcd, and canonical rational functions.

pub mod error;
pub mod gcd;
pub mod int;
pub mod json;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod var;

pub use error::{AlgebraError, Result};
pub use int::Int;
pub use parse::{parse, parse_ratio, parse_with};
pub use poly::{BigRat, Coeff, IntPoly, MultiPoly, Poly};
pub use ratfunc::{reassemble_partial_fractions, RationalFunction, RF};
pub use var::{Mono, Var};

/// Shorthand for an exact rational `n/d`.
pub fn q(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}
