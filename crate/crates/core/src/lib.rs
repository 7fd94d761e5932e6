//! Exact construction of the N-dimensional SO(3) quantum representations of
//! the one-holed torus mapping class group over `Q(X)`, their classical limit
//! at `X = -1`, a per-level numerical oracle, and spectral certificates of
//! infinite order for pseudo-Anosov classes.
//!
//! Polynomials and matrices are generic over the scalar; the aliases below fix
//! the scalars used throughout: exact rationals for `Q(X)` and double-precision
//! complex numbers for evaluations at roots of unity.

pub mod classical;
pub mod error;
pub mod field;
pub mod mcg;
pub mod numeric;
pub mod qsymbols;
pub mod repbuild;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials over the rationals.
pub type Poly = field::Polynomial<Rational>;
/// The field `Q(X)`.
pub type RatFunc = field::RationalFunction<Rational>;
/// Matrices over `Q(X)`.
pub type FMatrix = field::Matrix<RatFunc>;
/// Exact rational matrices.
pub type QMatrix = field::Matrix<Rational>;
/// Double-precision complex matrices.
pub type CMatrix = field::Matrix<num_complex::Complex64>;
