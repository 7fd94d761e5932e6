//! Eigenvalues of small dense complex matrices: Householder reduction to
//! Hessenberg form followed by single-shift QR sweeps with Givens rotations.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::scalar::Real;

/// Largest dimension accepted by [`eigenvalues`].
pub const DEFAULT_MAX_DIM: usize = 32;

const SWEEPS_PER_EIGENVALUE: usize = 60;

type Dense<F> = Vec<Vec<Complex<F>>>;

fn to_dense<F: Real>(m: &Matrix<Complex<F>>) -> Dense<F> {
    (0..m.n_rows()).map(|i| m.row(i).to_vec()).collect()
}

fn hessenberg<F: Real>(h: &mut Dense<F>) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let alpha_sq = (k + 1..n).fold(F::zero(), |acc, i| acc + h[i][k].norm_sqr());
        let alpha = alpha_sq.sqrt();
        if alpha == F::zero() {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == F::zero() {
            Complex::one()
        } else {
            x0 / x0.norm()
        };
        // v = x + phase * |x| e_1, reflector I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex<F>> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] = v[0] + phase * alpha;
        let vnorm_sq = v.iter().fold(F::zero(), |acc, z| acc + z.norm_sqr());
        if vnorm_sq == F::zero() {
            continue;
        }
        let two = F::one() + F::one();
        for j in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (r, vr)| acc + vr.conj() * h[k + 1 + r][j]);
            let f = dot * (two / vnorm_sq);
            for (r, vr) in v.iter().enumerate() {
                h[k + 1 + r][j] = h[k + 1 + r][j] - *vr * f;
            }
        }
        for row in h.iter_mut() {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (r, vr)| acc + row[k + 1 + r] * *vr);
            let f = dot * (two / vnorm_sq);
            for (r, vr) in v.iter().enumerate() {
                row[k + 1 + r] = row[k + 1 + r] - f * vr.conj();
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = Complex::zero();
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` sending `(a, b)` to `(r, 0)`.
fn givens<F: Real>(a: Complex<F>, b: Complex<F>) -> (F, Complex<F>) {
    let na = a.norm();
    let r = na.hypot(b.norm());
    if r == F::zero() {
        return (F::one(), Complex::zero());
    }
    if na == F::zero() {
        return (F::zero(), Complex::one());
    }
    (na / r, (a / na) * b.conj() / r)
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<F: Real>(a: Complex<F>, b: Complex<F>, c: Complex<F>, d: Complex<F>) -> Complex<F> {
    let two = F::one() + F::one();
    let half_tr = (a + d) / two;
    let disc = ((a - d) / two).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues<F: Real>(m: &Matrix<Complex<F>>) -> Result<Vec<Complex<F>>> {
    if !m.is_square() {
        return Err(Error::Dimension("eigenvalues of a non-square matrix".into()));
    }
    let n = m.n_rows();
    if n > DEFAULT_MAX_DIM {
        return Err(Error::Dimension(format!(
            "dimension {n} exceeds the eigensolver bound {DEFAULT_MAX_DIM}"
        )));
    }
    if m.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Format("non-finite matrix entry".into()));
    }
    let mut h = to_dense(m);
    hessenberg(&mut h);

    let eps = F::epsilon();
    let mut out = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut total = 0usize;
    let scale = m
        .entries()
        .iter()
        .fold(F::zero(), |acc, z| acc.max(z.norm()));
    while hi > 0 {
        let last = hi - 1;
        // Find the start of the unreduced block ending at `last`.
        let mut lo = last;
        while lo > 0 {
            let sub = h[lo][lo - 1].norm();
            let diag = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            let diag = if diag == F::zero() { scale } else { diag };
            if sub <= eps * diag {
                h[lo][lo - 1] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == last {
            out.push(h[last][last]);
            hi = last;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > SWEEPS_PER_EIGENVALUE * n {
            return Err(Error::Convergence(total));
        }
        let sigma = if iter % 11 == 0 {
            // Exceptional shift to break cycles.
            h[last][last] + Complex::new(h[last][last - 1].norm(), F::zero())
        } else {
            wilkinson_shift(
                h[last - 1][last - 1],
                h[last - 1][last],
                h[last][last - 1],
                h[last][last],
            )
        };
        for (i, row) in h.iter_mut().enumerate().take(hi).skip(lo) {
            row[i] = row[i] - sigma;
        }
        let mut rots = Vec::with_capacity(last - lo);
        for k in lo..last {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..hi {
                let top = h[k][j];
                let bot = h[k + 1][j];
                h[k][j] = top * c + s * bot;
                h[k + 1][j] = -s.conj() * top + bot * c;
            }
            rots.push((c, s));
        }
        for (offset, &(c, s)) in rots.iter().enumerate() {
            let k = lo + offset;
            for row in h.iter_mut().take((k + 2).min(hi)).skip(lo) {
                let left = row[k];
                let right = row[k + 1];
                row[k] = left * c + right * s.conj();
                row[k + 1] = -s * left + right * c;
            }
        }
        for (i, row) in h.iter_mut().enumerate().take(hi).skip(lo) {
            row[i] = row[i] + sigma;
        }
    }
    out.reverse();
    Ok(out)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius<F: Real>(m: &Matrix<Complex<F>>) -> Result<F> {
    Ok(eigenvalues(m)?
        .into_iter()
        .fold(F::zero(), |acc, z| acc.max(z.norm())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CMatrix;
    use num_complex::{Complex32, Complex64};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_moduli(v: &[Complex64]) -> Vec<f64> {
        let mut m: Vec<f64> = v.iter().map(|z| z.norm()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        m
    }

    #[test]
    fn identity_and_diagonal() {
        assert!((spectral_radius(&CMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-14);
        let d = CMatrix::from_rows(vec![vec![c(2.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.5, 0.0)]]).unwrap();
        assert!((spectral_radius(&d).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn golden_ratio_squared() {
        let m = CMatrix::from_rows(vec![vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
        let want = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius(&m).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn rotation_has_complex_pair() {
        let m = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let ev = eigenvalues(&m).unwrap();
        assert!(ev.iter().any(|z| (z - c(0.0, 1.0)).norm() < 1e-12));
        assert!(ev.iter().any(|z| (z - c(0.0, -1.0)).norm() < 1e-12));
    }

    #[test]
    fn jordan_block_and_nilpotent() {
        let m = CMatrix::from_fn(5, 5, |i, j| if j == i + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(spectral_radius(&m).unwrap() < 1e-12);
        let j = CMatrix::from_fn(4, 4, |i, k| {
            if i == k {
                c(0.0, 1.0)
            } else if k == i + 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!((spectral_radius(&j).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn companion_matrix_roots() {
        // (x-1)(x-2)(x-3)(x+4) = x^4 - 2x^3 - 13x^2 + 38x - 24
        let coeffs = [-24.0, 38.0, -13.0, -2.0];
        let m = CMatrix::from_fn(4, 4, |i, j| {
            if j == 3 {
                c(-coeffs[i], 0.0)
            } else if i == j + 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let got = sorted_moduli(&eigenvalues(&m).unwrap());
        for (g, w) in got.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((g - w).abs() < 1e-9, "{got:?}");
        }
    }

    #[test]
    fn single_precision() {
        let m = Matrix::from_rows(vec![
            vec![Complex32::new(2.0, 0.0), Complex32::new(1.0, 0.0)],
            vec![Complex32::new(1.0, 0.0), Complex32::new(1.0, 0.0)],
        ])
        .unwrap();
        assert!((spectral_radius(&m).unwrap() - 2.618034).abs() < 1e-5);
    }

    #[test]
    fn rejects_oversized_and_nonsquare() {
        assert!(eigenvalues(&CMatrix::identity(DEFAULT_MAX_DIM + 1)).is_err());
        assert!(eigenvalues(&CMatrix::zeros(2, 3)).is_err());
    }
}
