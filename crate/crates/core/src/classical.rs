//! `SL2(Z)` acting on homogeneous polynomials of degree `N - 1` in `X, Y`,
//! written in the rescaled monomial basis `alpha_n X^{N-1-n} Y^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mcg::{Generator, Sl2};
use crate::{QMatrix, Rational};

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow2(e: i64) -> Rational {
    let two = Rational::from_integer(2.into());
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        Rational::one() / num_traits::pow(two, e.unsigned_abs() as usize)
    }
}

/// `alpha_n = 2^n / (n! (N-1-n)!)`.
pub fn alpha(n: usize, dim: usize) -> Rational {
    assert!(n < dim, "basis index {n} out of range for N = {dim}");
    Rational::new(
        BigInt::one() << n,
        factorial(n) * factorial(dim - 1 - n),
    )
}

/// Coefficients of `(u X + v Y)^k` by power of `Y`.
fn binomial_row(u: &BigInt, v: &BigInt, k: usize) -> Vec<BigInt> {
    (0..=k)
        .map(|j| binomial(k, j) * num_traits::pow(u.clone(), k - j) * num_traits::pow(v.clone(), j))
        .collect()
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Matrix of `g` acting by `X^{N-1-n} Y^n -> (aX + cY)^{N-1-n} (bX + dY)^n`;
/// column `n` holds the image of basis vector `n`.
pub fn hn_matrix(g: &Sl2, dim: usize) -> Result<QMatrix> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    let alphas: Vec<Rational> = (0..dim).map(|n| alpha(n, dim)).collect();
    let mut out = QMatrix::zeros(dim, dim);
    for n in 0..dim {
        let image = convolve(
            &binomial_row(&g.a, &g.c, dim - 1 - n),
            &binomial_row(&g.b, &g.d, n),
        );
        for (m, coeff) in image.into_iter().enumerate() {
            if !coeff.is_zero() {
                out[(m, n)] = Rational::from_integer(coeff) * alphas[n].clone() / alphas[m].clone();
            }
        }
    }
    Ok(out)
}

pub fn hn_generator(g: Generator, dim: usize) -> Result<QMatrix> {
    hn_matrix(&g.sl2(), dim)
}

/// Closed-form values at `X = -1` of `T-hat`, `T-hat*`, the pairing ratios,
/// and every recurrence matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedLimits {
    pub that_limit: QMatrix,
    pub tstar_limit: QMatrix,
    pub r_limit: QMatrix,
    pub m_limits: Vec<QMatrix>,
}

pub fn closed_limits(dim: usize) -> Result<ClosedLimits> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    let big_n = dim as i64;
    let fact = |k: i64| Rational::from_integer(factorial(k as usize));
    let q = |k: i64| Rational::from_integer(k.into());

    let that_limit = QMatrix::from_fn(dim, dim, |m, n| {
        let (m, n) = (m as i64, n as i64);
        if m > n {
            return Rational::zero();
        }
        pow2(n - m) * fact(big_n - 1 - m) / (fact(n - m) * fact(big_n - 1 - n))
    });
    let tstar_limit = QMatrix::from_fn(dim, dim, |n, m| {
        let (n, m) = (n as i64, m as i64);
        if m > n {
            return Rational::zero();
        }
        let sign = if (m - n) % 2 == 0 { q(1) } else { q(-1) };
        sign * pow2(m - n) * fact(n) / (fact(m) * fact(n - m))
    });
    let r_limit = QMatrix::from_fn(dim, dim, |n, m| {
        let (n, m) = (n as i64, m as i64);
        let sign = if (n - m) % 2 == 0 { q(1) } else { q(-1) };
        sign * pow2(2 * (n - m)) * fact(m) * fact(big_n - 1 - m) / (fact(n) * fact(big_n - 1 - n))
    });
    let m_limits = (0..dim - 1)
        .map(|n| {
            let denom = q(n as i64 + 1);
            QMatrix::from_fn(dim, dim, |m, l| {
                let mi = m as i64;
                if l + 1 == m {
                    q(mi) / denom.clone()
                } else if l == m {
                    q(2 * (big_n - 2 * mi - 1)) / denom.clone()
                } else if l == m + 1 {
                    q(-4 * (big_n - mi - 1)) / denom.clone()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    Ok(ClosedLimits {
        that_limit,
        tstar_limit,
        r_limit,
        m_limits,
    })
}
