//! Level-independent matrices of the representation over `Q(X)`.
//!
//! All matrices are written in the orthogonal basis `Q'_0, ..., Q'_{N-1}`.
//! `Z` is the curve operator of the longitude, `Y` that of the meridian,
//! `Z'` that of the twisted longitude `t_y(z)`, and `M^(n)` the operator that
//! carries column `n` of `T` to column `n + 1`.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Entry, Error, Result};
use crate::field::{eval_at_minus_one, signed_power};
use crate::mcg::{Generator, Word};
use crate::qsymbols::{lambda_shifted, qint, rhat, QContext};
use crate::{FMatrix, QMatrix, RatFunc};

/// `z[m][m] = lambda_{c+m}`, `z[m][m-1] = {m}`; lower bidiagonal.
pub fn build_z(ctx: &QContext) -> FMatrix {
    FMatrix::from_fn(ctx.dim(), ctx.dim(), |m, l| {
        if l == m {
            lambda_shifted(m, ctx)
        } else if l + 1 == m {
            qint(m as i64)
        } else {
            RatFunc::zero()
        }
    })
}

/// Transpose of `z` through the Hopf pairing: `y[m][l] = rhat(l, m) z[l][m]`.
pub fn build_y(ctx: &QContext, z: &FMatrix) -> FMatrix {
    FMatrix::from_fn(ctx.dim(), ctx.dim(), |m, l| {
        let zt = &z[(l, m)];
        if zt.is_zero() {
            RatFunc::zero()
        } else {
            &rhat(l, m, ctx) * zt
        }
    })
}

/// Skein relation `Z(t_y(z)) = (A Y Z - A^{-1} Z Y) / {2}` with `A` realized as `X`.
pub fn build_zprime(_ctx: &QContext, y: &FMatrix, z: &FMatrix) -> FMatrix {
    let a = RatFunc::x();
    let a_inv = a.inv().expect("X is a unit");
    let q2_inv = qint(2).inv().expect("{2} is nonzero");
    let yz = y * z;
    let zy = z * y;
    FMatrix::from_fn(y.n_rows(), y.n_cols(), |i, j| {
        let v = &(&a * &yz[(i, j)]) - &(&a_inv * &zy[(i, j)]);
        &v * &q2_inv
    })
}

/// `M^(n) = (Z' - lambda_{c+n} I) / {n+1}` for `0 <= n <= N-2`.
pub fn build_m(n: usize, ctx: &QContext, zprime: &FMatrix) -> Result<FMatrix> {
    if n + 2 > ctx.dim() {
        return Err(Error::Dimension(format!(
            "recurrence index {n} out of range for N = {}",
            ctx.dim()
        )));
    }
    let lambda = lambda_shifted(n, ctx);
    let scale = qint(n as i64 + 1).inv()?;
    Ok(FMatrix::from_fn(ctx.dim(), ctx.dim(), |i, j| {
        let v = if i == j {
            &zprime[(i, j)] - &lambda
        } else {
            zprime[(i, j)].clone()
        };
        &v * &scale
    }))
}

/// Runs the column recurrence: column 0 is `e_0`, column `n+1` is `M^(n)` times column `n`.
pub fn that_from_recurrence(ctx: &QContext, m_hat: &[FMatrix]) -> Result<FMatrix> {
    let dim = ctx.dim();
    let mut t = FMatrix::zeros(dim, dim);
    let mut col: Vec<RatFunc> = (0..dim)
        .map(|i| if i == 0 { RatFunc::one() } else { RatFunc::zero() })
        .collect();
    t.set_column(0, &col);
    for (n, m) in m_hat.iter().enumerate() {
        col = m.mul_vec(&col)?;
        t.set_column(n + 1, &col);
    }
    Ok(t)
}

/// `T-hat`, the normalized matrix of the twist along the meridian.
pub fn build_that(ctx: &QContext) -> Result<FMatrix> {
    let z = build_z(ctx);
    let y = build_y(ctx, &z);
    let zp = build_zprime(ctx, &y, &z);
    let m_hat = (0..ctx.dim() - 1)
        .map(|n| build_m(n, ctx, &zp))
        .collect::<Result<Vec<_>>>()?;
    that_from_recurrence(ctx, &m_hat)
}

/// `T-hat*[n][m] = T-hat[m][n] / rhat(n, m)`.
pub fn build_tstar(ctx: &QContext, that: &FMatrix) -> FMatrix {
    FMatrix::from_fn(ctx.dim(), ctx.dim(), |n, m| {
        let a = &that[(m, n)];
        if a.is_zero() {
            RatFunc::zero()
        } else {
            a * &rhat(m, n, ctx)
        }
    })
}

/// `T T* T == T* T T*`, exactly.
pub fn braid_holds(t: &FMatrix, tstar: &FMatrix) -> bool {
    let lhs = &(t * tstar) * t;
    let rhs = &(tstar * t) * tstar;
    lhs == rhs
}

pub fn verify_braid(ctx: &QContext) -> Result<bool> {
    let rep = RepSet::build(*ctx)?;
    Ok(rep.braid_holds())
}

/// Every matrix of the construction for one dimension.
#[derive(Debug)]
pub struct RepSet {
    pub ctx: QContext,
    pub z_hat: FMatrix,
    pub y_hat: FMatrix,
    pub zprime_hat: FMatrix,
    pub m_hat: Vec<FMatrix>,
    pub t_hat: FMatrix,
    pub tstar_hat: FMatrix,
    t_inv: OnceLock<FMatrix>,
    tstar_inv: OnceLock<FMatrix>,
}

impl RepSet {
    pub fn build(ctx: QContext) -> Result<Self> {
        let z_hat = build_z(&ctx);
        let y_hat = build_y(&ctx, &z_hat);
        let zprime_hat = build_zprime(&ctx, &y_hat, &z_hat);
        let m_hat = (0..ctx.dim() - 1)
            .map(|n| build_m(n, &ctx, &zprime_hat))
            .collect::<Result<Vec<_>>>()?;
        let t_hat = that_from_recurrence(&ctx, &m_hat)?;
        let tstar_hat = build_tstar(&ctx, &t_hat);
        Ok(Self {
            ctx,
            z_hat,
            y_hat,
            zprime_hat,
            m_hat,
            t_hat,
            tstar_hat,
            t_inv: OnceLock::new(),
            tstar_inv: OnceLock::new(),
        })
    }

    pub fn for_dim(n: usize) -> Result<Self> {
        Self::build(QContext::new(n)?)
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// Replaces `T-hat[0][0]` by zero. Used as a negative control for the checks.
    pub fn corrupt(&mut self) {
        self.t_hat[(0, 0)] = RatFunc::zero();
        self.t_inv = OnceLock::new();
    }

    /// The matrix of pairing ratios, `R[n][m] = rhat(n, m)`.
    pub fn r_hat(&self) -> FMatrix {
        FMatrix::from_fn(self.dim(), self.dim(), |n, m| rhat(n, m, &self.ctx))
    }

    pub fn braid_holds(&self) -> bool {
        braid_holds(&self.t_hat, &self.tstar_hat)
    }

    fn generator(&self, g: Generator) -> &FMatrix {
        match g {
            Generator::Ty => &self.t_hat,
            Generator::Tz => &self.tstar_hat,
        }
    }

    fn generator_inverse(&self, g: Generator) -> Result<&FMatrix> {
        let (cell, m) = match g {
            Generator::Ty => (&self.t_inv, &self.t_hat),
            Generator::Tz => (&self.tstar_inv, &self.tstar_hat),
        };
        if let Some(inv) = cell.get() {
            return Ok(inv);
        }
        let inv = m.inverse()?;
        Ok(cell.get_or_init(|| inv))
    }

    /// `rho-hat(w)`: leftmost letter leftmost in the product.
    pub fn rep_of_word(&self, w: &Word) -> Result<FMatrix> {
        let mut acc = FMatrix::identity(self.dim());
        for letter in w.letters() {
            let base = if letter.exp > 0 {
                self.generator(letter.gen)
            } else {
                self.generator_inverse(letter.gen)?
            };
            for _ in 0..letter.exp.unsigned_abs() {
                acc = &acc * base;
            }
        }
        Ok(acc)
    }
}

pub fn rep_of_word(w: &Word, ctx: &QContext) -> Result<FMatrix> {
    RepSet::build(*ctx)?.rep_of_word(w)
}

/// Entrywise value at `X = -1`.
pub fn classical_limit(m: &FMatrix) -> Result<QMatrix> {
    m.try_map(|row, col, f| {
        eval_at_minus_one(f).map_err(|e| match e {
            Error::Pole { point, .. } => Error::Pole {
                point,
                entry: Some(Entry { row, col }),
            },
            other => other,
        })
    })
}

/// `(-X)^{-2N+2m} {m}`: the subdiagonal of `Z'` in closed form.
pub fn zprime_subdiagonal(m: usize, ctx: &QContext) -> RatFunc {
    &qint(m as i64) * &signed_power(2 * m as i64 - 2 * ctx.dim() as i64)
}

/// Column 0 of `T-hat` is `e_0`.
pub fn first_column_is_unit(t: &FMatrix) -> bool {
    t.column(0)
        .iter()
        .enumerate()
        .all(|(i, v)| if i == 0 { v.is_one() } else { v.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn ctx(n: usize) -> QContext {
        QContext::new(n).unwrap()
    }

    fn qm(rows: &[&[(i64, i64)]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(p, q)| crate::Rational::new(p.into(), q.into()))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn z_is_lower_bidiagonal() {
        let c = ctx(2);
        let z = build_z(&c);
        assert_eq!(z[(0, 0)], lambda_shifted(0, &c));
        assert_eq!(z[(1, 1)], lambda_shifted(1, &c));
        assert_eq!(z[(1, 0)], qint(1));
        assert!(z[(0, 1)].is_zero());
        let lim = classical_limit(&build_z(&ctx(4))).unwrap();
        for m in 0..4 {
            assert_eq!(lim[(m, m)], rational(-2));
        }
    }

    #[test]
    fn y_is_upper_bidiagonal() {
        let c = ctx(4);
        let z = build_z(&c);
        let y = build_y(&c, &z);
        for m in 0..4 {
            assert_eq!(y[(m, m)], z[(m, m)]);
            for l in 0..4 {
                if l != m && l != m + 1 {
                    assert!(y[(m, l)].is_zero());
                }
            }
        }
        let c2 = ctx(2);
        let y2 = build_y(&c2, &build_z(&c2));
        assert_eq!(y2[(0, 1)], &rhat(1, 0, &c2) * &qint(1));
    }

    #[test]
    fn zprime_is_tridiagonal_with_closed_subdiagonal() {
        for n in 2..=5 {
            let c = ctx(n);
            let z = build_z(&c);
            let y = build_y(&c, &z);
            let zp = build_zprime(&c, &y, &z);
            for i in 0..n {
                for j in 0..n {
                    if i.abs_diff(j) >= 2 {
                        assert!(zp[(i, j)].is_zero(), "N={n} ({i},{j})");
                    }
                }
                if i >= 1 {
                    assert_eq!(zp[(i, i - 1)], zprime_subdiagonal(i, &c));
                }
            }
        }
    }

    #[test]
    fn m_limits_for_three_dimensions() {
        let rep = RepSet::for_dim(3).unwrap();
        let m0 = classical_limit(&rep.m_hat[0]).unwrap();
        assert_eq!(m0[(0, 0)], rational(4));
        assert_eq!(m0[(0, 1)], rational(-8));
        assert_eq!(m0[(1, 0)], rational(1));
        let m1 = classical_limit(&rep.m_hat[1]).unwrap();
        assert_eq!(m1[(1, 0)], crate::Rational::new(1.into(), 2.into()));
        assert!(build_m(2, &rep.ctx, &rep.zprime_hat).is_err());
    }

    #[test]
    fn t_hat_limits() {
        let rep = RepSet::for_dim(2).unwrap();
        assert!(first_column_is_unit(&rep.t_hat));
        assert_eq!(
            classical_limit(&rep.t_hat).unwrap(),
            qm(&[&[(1, 1), (2, 1)], &[(0, 1), (1, 1)]])
        );
        assert_eq!(
            classical_limit(&rep.tstar_hat).unwrap(),
            qm(&[&[(1, 1), (0, 1)], &[(-1, 2), (1, 1)]])
        );
        // Closed form at N = 3, by hand: 2^{n-m}(N-1-m)!/((n-m)!(N-1-n)!).
        let rep3 = RepSet::for_dim(3).unwrap();
        assert_eq!(
            classical_limit(&rep3.t_hat).unwrap(),
            qm(&[
                &[(1, 1), (4, 1), (4, 1)],
                &[(0, 1), (1, 1), (2, 1)],
                &[(0, 1), (0, 1), (1, 1)]
            ])
        );
    }

    #[test]
    fn unitriangular_limits_at_five_and_four() {
        let lim = classical_limit(&RepSet::for_dim(5).unwrap().t_hat).unwrap();
        for i in 0..5 {
            assert_eq!(lim[(i, i)], rational(1));
            for j in 0..i {
                assert_eq!(lim[(i, j)], rational(0));
            }
        }
        let lim = classical_limit(&RepSet::for_dim(4).unwrap().tstar_hat).unwrap();
        for i in 0..4 {
            assert_eq!(lim[(i, i)], rational(1));
            for j in i + 1..4 {
                assert_eq!(lim[(i, j)], rational(0));
            }
        }
    }

    #[test]
    fn braid_relation_and_negative_control() {
        assert!(verify_braid(&ctx(2)).unwrap());
        assert!(verify_braid(&ctx(3)).unwrap());
        let mut rep = RepSet::for_dim(3).unwrap();
        rep.corrupt();
        assert!(!rep.braid_holds());
    }

    #[test]
    fn words_and_inverses() {
        let rep = RepSet::for_dim(2).unwrap();
        let id = rep.rep_of_word(&Word::parse("").unwrap()).unwrap();
        assert!(id.is_identity());
        assert_eq!(rep.rep_of_word(&Word::parse("y").unwrap()).unwrap(), rep.t_hat);
        assert_eq!(
            rep.rep_of_word(&Word::parse("y z y").unwrap()).unwrap(),
            rep.rep_of_word(&Word::parse("z y z").unwrap()).unwrap()
        );
        let t = rep.rep_of_word(&Word::parse("y^2 z^-1 y^-2 z").unwrap()).unwrap();
        let t_inv = rep.rep_of_word(&Word::parse("z^-1 y^2 z y^-2").unwrap()).unwrap();
        assert!((&t * &t_inv).is_identity());
        assert!((&rep.t_hat * rep.generator_inverse(Generator::Ty).unwrap()).is_identity());
    }

    #[test]
    fn classical_limit_reports_pole_position() {
        let mut m = FMatrix::identity(2);
        m[(1, 0)] = RatFunc::one().checked_div(&(&RatFunc::x() + &RatFunc::one())).unwrap();
        match classical_limit(&m) {
            Err(Error::Pole { entry: Some(e), .. }) => assert_eq!((e.row, e.col), (1, 0)),
            other => panic!("expected pole, got {other:?}"),
        }
        assert!(classical_limit(&FMatrix::identity(3)).unwrap().is_identity());
    }
}
