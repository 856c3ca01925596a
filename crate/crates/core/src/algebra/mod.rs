//! Exact rationals, high-precision complex numbers and Laurent polynomials.

pub mod complex;
pub mod laurent;
pub mod rational;

pub use complex::ComplexApprox;
pub use laurent::LaurentPoly;
pub use rational::{parse_rational, pow_int, Rational};
