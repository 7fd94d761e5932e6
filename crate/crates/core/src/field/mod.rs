//! Exact arithmetic in `Q(X)`: polynomials, reduced fractions, matrices, and
//! their JSON form.

pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod serial;

pub use matrix::Matrix;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use serial::{ComplexEntry, MatrixDocument, RationalString};

use num_traits::One;

use crate::{RatFunc, Rational};

/// `(-X)^n` for any integer `n`.
pub fn signed_power(n: i64) -> RatFunc {
    let sign = if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    RatFunc::monomial(sign, n)
}

/// `f(-1)`, or a pole error.
pub fn eval_at_minus_one(f: &RatFunc) -> crate::Result<Rational> {
    f.eval_exact(&-Rational::one())
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

