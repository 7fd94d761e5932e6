//! Quantum integers and the level-independent forms of the eigenvalues and
//! Hopf-pairing ratios, as elements of `Q(X)`.
//!
//! The level `p` never appears here: every quantity has already been reduced
//! using `(-A)^p = 1` and `2c = p - 1 - 2N`, leaving expressions in `N` only.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::signed_power;
use crate::RatFunc;

/// Dimension of the representation, fixed for a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QContext {
    n: usize,
}

impl QContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadDimension(n));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn n_i64(&self) -> i64 {
        self.n as i64
    }
}

/// `{n} = (-X)^n - (-X)^{-n}`.
pub fn qint(n: i64) -> RatFunc {
    &signed_power(n) - &signed_power(-n)
}

/// `{n}+ = (-X)^n + (-X)^{-n}`.
pub fn qint_plus(n: i64) -> RatFunc {
    &signed_power(n) + &signed_power(-n)
}

/// `{n}! = {1}{2}...{n}`, with `{0}! = 1` and `{n}! = 0` for negative `n`.
pub fn qfact(n: i64) -> RatFunc {
    if n < 0 {
        return RatFunc::zero();
    }
    (1..=n).fold(RatFunc::one(), |acc, k| &acc * &qint(k))
}

/// Twist eigenvalue `mu_n = (-X)^{n(n+2)}`.
pub fn mu(n: i64) -> RatFunc {
    signed_power(n * (n + 2))
}

/// Curve-operator eigenvalue `lambda_{c+k}` after eliminating the level:
/// `-((-X)^{2k+1-2N} + (-X)^{2N-2k-1})`.
pub fn lambda_shifted(k: usize, ctx: &QContext) -> RatFunc {
    let e = 2 * ctx.n_i64() - 2 * k as i64 - 1;
    -&(&signed_power(-e) + &signed_power(e))
}

/// Ratio of Hopf-pairing norms `((Q_n, Q_n)) / ((Q_m, Q_m))`, level eliminated.
///
/// For `n > m` this is the telescoped product
/// `(-1)^{n-m} prod_{j=m+1}^{n} {2N-2j}/{j} * prod_{k=2N-n}^{2N-m-1} {k}+`,
/// and `rhat(m, n) = 1 / rhat(n, m)`.
pub fn rhat(n: usize, m: usize, ctx: &QContext) -> RatFunc {
    use std::cmp::Ordering;
    match n.cmp(&m) {
        Ordering::Equal => RatFunc::one(),
        Ordering::Less => rhat(m, n, ctx)
            .inv()
            .expect("pairing ratio is a unit in Q(X)"),
        Ordering::Greater => {
            let big_n = ctx.n_i64();
            let (n, m) = (n as i64, m as i64);
            let mut acc = if (n - m) % 2 == 0 {
                RatFunc::one()
            } else {
                -RatFunc::one()
            };
            for j in m + 1..=n {
                let ratio = qint(2 * big_n - 2 * j)
                    .checked_div(&qint(j))
                    .expect("{j} is nonzero for j >= 1");
                acc = &acc * &ratio;
            }
            for k in 2 * big_n - n..=2 * big_n - m - 1 {
                acc = &acc * &qint_plus(k);
            }
            acc
        }
    }
}
