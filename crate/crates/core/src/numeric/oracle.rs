//! Direct construction of `T_p` and `T_p*` at one level.
//!
//! Everything here is computed from the level-dependent definitions with the
//! color `c` appearing literally: quantum integers are evaluated at `A`, the
//! pairing ratios come from full (double) factorial products, and no
//! reflection identity or symbolic arithmetic is used. This makes it an
//! independent check on the `Q(X)` construction.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{PSetting, DEFAULT_POLE_TOLERANCE};
use crate::error::{Error, Result};
use crate::CMatrix;

/// Every intermediate matrix of the per-level construction.
#[derive(Clone, Debug)]
pub struct OracleSet {
    pub z: CMatrix,
    pub y: CMatrix,
    pub zprime: CMatrix,
    pub m: Vec<CMatrix>,
    pub t: CMatrix,
    pub tstar: CMatrix,
}

struct Level<'a> {
    s: &'a PSetting,
}

impl Level<'_> {
    /// Divisors must stay away from zero.
    fn guard(&self, v: Complex64) -> Result<Complex64> {
        if v.norm() < DEFAULT_POLE_TOLERANCE {
            return Err(Error::NearPole {
                modulus: v.norm(),
                tolerance: DEFAULT_POLE_TOLERANCE,
                entry: None,
            });
        }
        Ok(v)
    }

    /// `{1}{2}...{k}`; empty product for `k <= 0`.
    fn fact(&self, k: i64) -> Complex64 {
        (1..=k).map(|j| self.s.qint(j)).product()
    }

    /// `{k}{k-2}...`, ending at `{1}` or `{2}`.
    fn double_fact(&self, k: i64) -> Complex64 {
        (1..=k).rev().step_by(2).map(|j| self.s.qint(j)).product()
    }

    /// `{1}+{2}+...{k}+`.
    fn fact_plus(&self, k: i64) -> Complex64 {
        (1..=k).map(|j| self.s.qint_plus(j)).product()
    }

    /// `lambda_j = -(A^{2j+2} + A^{-2j-2})`.
    fn lambda(&self, j: i64) -> Complex64 {
        -self.s.qint_plus(2 * j + 2)
    }

    /// `R_{n,m} = {m}! {2c+2n+1}!! {2c+n+1}+! / ({n}! {2c+2m+1}!! {2c+m+1}+!)`.
    fn ratio(&self, n: i64, m: i64) -> Result<Complex64> {
        let c = self.s.c;
        let num = self.fact(m) * self.double_fact(2 * c + 2 * n + 1) * self.fact_plus(2 * c + n + 1);
        let den = self.fact(n) * self.double_fact(2 * c + 2 * m + 1) * self.fact_plus(2 * c + m + 1);
        Ok(num / self.guard(den)?)
    }
}

pub fn oracle_matrices(s: &PSetting) -> Result<OracleSet> {
    let lv = Level { s };
    let dim = s.n;
    let c = s.c;

    let z = CMatrix::from_fn(dim, dim, |m, l| {
        if l == m {
            lv.lambda(c + m as i64)
        } else if l + 1 == m {
            s.qint(m as i64)
        } else {
            Complex64::zero()
        }
    });

    let mut ratios = CMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            ratios[(n, m)] = lv.ratio(n as i64, m as i64)?;
        }
    }
    let y = CMatrix::from_fn(dim, dim, |m, l| ratios[(l, m)] * z[(l, m)]);

    let q2 = lv.guard(s.qint(2))?;
    let yz = &y * &z;
    let zy = &z * &y;
    let a_inv = s.a.inv();
    let zprime = CMatrix::from_fn(dim, dim, |i, j| (s.a * yz[(i, j)] - a_inv * zy[(i, j)]) / q2);

    let mut m_list = Vec::with_capacity(dim.saturating_sub(1));
    for n in 0..dim - 1 {
        let scale = lv.guard(s.qint(n as i64 + 1))?.inv();
        let lambda = lv.lambda(c + n as i64);
        m_list.push(CMatrix::from_fn(dim, dim, |i, j| {
            let v = if i == j { zprime[(i, j)] - lambda } else { zprime[(i, j)] };
            v * scale
        }));
    }

    let mut t = CMatrix::zeros(dim, dim);
    let mut col: Vec<Complex64> = (0..dim)
        .map(|i| if i == 0 { Complex64::one() } else { Complex64::zero() })
        .collect();
    t.set_column(0, &col);
    for (n, m) in m_list.iter().enumerate() {
        col = m.mul_vec(&col)?;
        t.set_column(n + 1, &col);
    }

    let tstar = CMatrix::from_fn(dim, dim, |n, m| t[(m, n)] / ratios[(n, m)]);

    Ok(OracleSet {
        z,
        y,
        zprime,
        m: m_list,
        t,
        tstar,
    })
}
