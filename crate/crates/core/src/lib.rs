//! Exact computations around F-manifold structures on bases of
//! miniversal deformations: node families, determinantal space curves and
//! complete intersections.
//!
//! The algebraic core is generic over [`scalar::Field`]; the aliases below
//! fix the exact rational instantiation used everywhere else.

pub mod algebra;
pub mod deform;
pub mod error;
pub mod fmanifold;
pub mod frobenius;
pub mod parse;
pub mod quotient;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};

pub type Rational = scalar::Rational;
pub type Poly = algebra::poly::MultiPoly<Rational>;
pub type RatFn = algebra::ratfun::RationalFunction<Rational>;
pub type Series = algebra::series::TruncSeries<Rational>;
pub type Matrix = algebra::linalg::Matrix<Rational>;
