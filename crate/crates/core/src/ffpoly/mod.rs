//! Polynomials over `F_q` and the elementary divisors built from them.

pub mod arith;
mod context;
mod divisor;
pub mod field;
mod poly;

pub use context::FieldContext;
pub use divisor::{DivisorClass, ElementaryDivisor};
pub use field::{prime_power, GaloisField};
pub use poly::FqPoly;
