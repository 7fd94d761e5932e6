//! Level-dependent, floating-point side: roots of unity, evaluation of the
//! symbolic matrices, the per-level oracle, spectra, and infinite-order
//! certificates.

pub mod amu;
pub mod eigen;
pub mod oracle;

pub use amu::{amu_certificate, convergence_table, AmuOptions, AmuReport, ConvergenceRow};
pub use eigen::{eigenvalues, spectral_radius, DEFAULT_MAX_DIM};
pub use oracle::{oracle_matrices, OracleSet};

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Entry, Error, Result};
use crate::{CMatrix, FMatrix};

/// Default modulus below which a denominator counts as a pole.
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-12;

/// One level `p` together with the derived color `c = (p-1)/2 - N` and the
/// root of unity `A`.
///
/// The default root is `A = -exp(2 pi i / p)`: a primitive `2p`-th root with
/// `(-A)^p = 1` that tends to `-1` as `p` grows. Other roots
/// `A = -exp(2 pi i k / p)` with `gcd(k, p) = 1` are available through
/// [`PSetting::with_root_index`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PSetting {
    pub p: i64,
    pub n: usize,
    pub d: i64,
    pub c: i64,
    pub a: Complex64,
}

impl PSetting {
    pub fn new(p: i64, n: usize) -> Result<Self> {
        Self::with_root_index(p, n, 1)
    }

    pub fn with_root_index(p: i64, n: usize, k: i64) -> Result<Self> {
        Self::check(p, n)?;
        if k.gcd(&p) != 1 {
            return Err(Error::Format(format!("root index {k} is not coprime to p = {p}")));
        }
        let a = -Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64);
        Self::with_root_value(p, n, a)
    }

    /// Any unit complex number as `A`; no primitivity check is made.
    pub fn with_root_value(p: i64, n: usize, a: Complex64) -> Result<Self> {
        Self::check(p, n)?;
        if (a.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Format(format!("root {a} is not of unit modulus")));
        }
        let d = (p - 1) / 2;
        Ok(Self {
            p,
            n,
            d,
            c: d - n as i64,
            a,
        })
    }

    fn check(p: i64, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::BadDimension(n));
        }
        if p % 2 == 0 || p < 2 * n as i64 + 1 {
            return Err(Error::BadP { p, n });
        }
        Ok(())
    }

    /// `(-A)^k`.
    pub fn signed_power(&self, k: i64) -> Complex64 {
        (-self.a).powi(k as i32)
    }

    /// `{k}` at `A`.
    pub fn qint(&self, k: i64) -> Complex64 {
        self.signed_power(k) - self.signed_power(-k)
    }

    /// `{k}+` at `A`.
    pub fn qint_plus(&self, k: i64) -> Complex64 {
        self.signed_power(k) + self.signed_power(-k)
    }

    /// `mu_c = (-A)^{c(c+2)}`, the twist normalization and the value of the character on a generator.
    pub fn mu_c(&self) -> Complex64 {
        self.signed_power(self.c * (self.c + 2))
    }
}

/// Odd levels in `[lo, hi]` that are admissible for dimension `n`.
pub fn odd_levels(lo: i64, hi: i64, n: usize) -> Vec<i64> {
    let start = lo.max(2 * n as i64 + 1);
    (start..=hi).filter(|p| p % 2 == 1).collect()
}

/// Entrywise complex evaluation; near-pole errors carry the entry.
pub fn eval_matrix(m: &FMatrix, x: Complex64, tol: f64) -> Result<CMatrix> {
    m.try_map(|row, col, f| {
        f.eval_complex(x, tol).map_err(|e| match e {
            Error::NearPole {
                modulus, tolerance, ..
            } => Error::NearPole {
                modulus,
                tolerance,
                entry: Some(Entry { row, col }),
            },
            other => other,
        })
    })
}

/// Entrywise maximum modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!((a.n_rows(), a.n_cols()), (b.n_rows(), b.n_cols()));
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Exact rational matrix embedded in the complex numbers.
pub fn to_complex(m: &crate::QMatrix) -> CMatrix {
    use num_traits::ToPrimitive;
    m.map(|v| Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsymbols::qint;
    use num_traits::One;

    #[test]
    fn setting_fields() {
        let s = PSetting::new(11, 3).unwrap();
        assert_eq!((s.d, s.c), (5, 2));
        assert!((s.a.norm() - 1.0).abs() < 1e-15);
        // Primitive 2p-th root: A^p = -1 and (-A)^p = 1.
        assert!((s.a.powi(11) + 1.0).norm() < 1e-12);
        assert!((s.signed_power(11) - 1.0).norm() < 1e-12);
        assert_eq!(PSetting::new(7, 3).unwrap().c, 0);
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(matches!(PSetting::new(10, 2), Err(Error::BadP { .. })));
        assert!(matches!(PSetting::new(5, 3), Err(Error::BadP { .. })));
        assert!(PSetting::with_root_index(9, 2, 3).is_err());
        assert!(PSetting::with_root_value(9, 2, Complex64::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn reflection_identities_hold_at_the_root() {
        for n in 2..=4usize {
            for p in odd_levels(0, 41, n) {
                let s = PSetting::new(p, n).unwrap();
                for x in -6..=3 * n as i64 {
                    let lhs = s.qint(x + 2 * s.c);
                    let rhs = -s.qint(2 * n as i64 + 1 - x);
                    assert!((lhs - rhs).norm() < 1e-10, "p={p} N={n} x={x}");
                    let lhs = s.qint_plus(x + 2 * s.c);
                    let rhs = s.qint_plus(2 * n as i64 + 1 - x);
                    assert!((lhs - rhs).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn complex_evaluation_of_quantum_integer() {
        let x = -Complex64::from_polar(1.0, PI / 7.0);
        let got = qint(1).eval_complex(x, DEFAULT_POLE_TOLERANCE).unwrap();
        let want = (-x) - (-x).inv();
        assert!((got - want).norm() < 1e-14);
        let inv = crate::field::signed_power(-1)
            .eval_complex(Complex64::new(-1.0, 0.0), DEFAULT_POLE_TOLERANCE)
            .unwrap();
        assert!((inv - Complex64::one()).norm() < 1e-15);
    }

    #[test]
    fn eval_identity_matrix() {
        let id = eval_matrix(&FMatrix::identity(3), Complex64::one(), 1e-12).unwrap();
        assert!(id.is_identity());
        let mut m = FMatrix::identity(2);
        m[(0, 1)] = crate::RatFunc::one()
            .checked_div(&(&crate::RatFunc::x() - &crate::RatFunc::one()))
            .unwrap();
        match eval_matrix(&m, Complex64::one(), 1e-12) {
            Err(Error::NearPole { entry: Some(e), .. }) => assert_eq!((e.row, e.col), (0, 1)),
            other => panic!("expected near-pole error, got {other:?}"),
        }
    }

    #[test]
    fn level_ranges() {
        assert_eq!(odd_levels(1, 13, 3), vec![7, 9, 11, 13]);
        assert!(odd_levels(9, 7, 2).is_empty());
    }
}
