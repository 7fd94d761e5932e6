//! Convergence of the rescaled quantum matrices to the classical action, and
//! spectral certificates that a pseudo-Anosov class acts with infinite order.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{eval_matrix, max_abs_diff, spectral_radius, to_complex, PSetting};
use super::{odd_levels, DEFAULT_POLE_TOLERANCE};
use crate::classical::hn_matrix;
use crate::error::Result;
use crate::mcg::{chi_p, classify, stretch_factor, Classification, Word};
use crate::repbuild::RepSet;

pub const DEFAULT_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmuOptions {
    /// Spectral radius must exceed `1 + margin`.
    pub margin: f64,
    /// Near-pole tolerance for complex evaluation.
    pub tolerance: f64,
    /// Root index `k`, `A = -exp(2 pi i k / p)`.
    pub root_index: i64,
}

impl Default for AmuOptions {
    fn default() -> Self {
        Self {
            margin: DEFAULT_MARGIN,
            tolerance: DEFAULT_POLE_TOLERANCE,
            root_index: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub p: i64,
    pub spectral_radius: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmuReport {
    pub word: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub classification: String,
    pub trace: String,
    /// Dominant eigenvalue modulus of the `SL2(Z)` image.
    pub stretch: Option<f64>,
    /// `stretch^(N-1)`, the spectral radius of the classical action.
    pub target_eig: Option<f64>,
    pub margin: f64,
    pub tolerance: f64,
    pub rows: Vec<ConvergenceRow>,
    pub p0_observed: Option<i64>,
}

/// Per level `p`: the quantum matrix `M_p = chi_p(w) rho-hat(w)(A_p)`, its
/// spectral radius, and `max |chi_p(w)^{-1} M_p - M|` against the classical
/// matrix `M`. Rows are sorted by `p`.
pub fn convergence_table(
    rep: &RepSet,
    w: &Word,
    levels: &[i64],
    opts: &AmuOptions,
) -> Result<Vec<ConvergenceRow>> {
    let dim = rep.dim();
    let symbolic = rep.rep_of_word(w)?;
    let classical = to_complex(&hn_matrix(&w.sl2_image(), dim)?);
    let mut rows = levels
        .par_iter()
        .map(|&p| {
            let s = PSetting::with_root_index(p, dim, opts.root_index)?;
            let rescaled = eval_matrix(&symbolic, s.a, opts.tolerance)?;
            let chi = chi_p(w, &s);
            let quantum = rescaled.scale(&chi);
            let unscaled = quantum.scale(&chi.inv());
            Ok(ConvergenceRow {
                p,
                spectral_radius: spectral_radius(&quantum)?,
                deviation: max_abs_diff(&unscaled, &classical),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.p);
    Ok(rows)
}

/// Smallest scanned `p` from which every row has spectral radius above `1 + margin`.
pub fn p0_from_rows(rows: &[ConvergenceRow], margin: f64) -> Option<i64> {
    rows.iter()
        .rev()
        .take_while(|r| r.spectral_radius > 1.0 + margin)
        .last()
        .map(|r| r.p)
}

/// Scans odd `p` in `[2N+1, p_max]`. Only pseudo-Anosov classes receive a `p0_observed`.
pub fn amu_certificate(rep: &RepSet, w: &Word, p_max: i64, opts: &AmuOptions) -> Result<AmuReport> {
    let dim = rep.dim();
    let image = w.sl2_image();
    let class = classify(w);
    let levels = odd_levels(2 * dim as i64 + 1, p_max, dim);
    let rows = convergence_table(rep, w, &levels, opts)?;
    let (stretch, target_eig, p0) = if class == Classification::PseudoAnosov {
        let lambda = stretch_factor(&image)?;
        (
            Some(lambda),
            Some(lambda.powi(dim as i32 - 1)),
            p0_from_rows(&rows, opts.margin),
        )
    } else {
        (None, None, None)
    };
    Ok(AmuReport {
        word: w.to_string(),
        n: dim,
        classification: class.to_string(),
        trace: image.trace().to_string(),
        stretch,
        target_eig,
        margin: opts.margin,
        tolerance: opts.tolerance,
        rows,
        p0_observed: p0,
    })
}

/// `chi_p(w)` for every row's level; exposed for reports that want the phases.
pub fn characters(w: &Word, dim: usize, levels: &[i64]) -> Result<Vec<Complex64>> {
    levels
        .iter()
        .map(|&p| Ok(chi_p(w, &PSetting::new(p, dim)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(p: i64, r: f64) -> ConvergenceRow {
        ConvergenceRow {
            p,
            spectral_radius: r,
            deviation: 0.0,
        }
    }

    #[test]
    fn p0_is_start_of_final_run() {
        let rows = [row(5, 1.5), row(7, 1.0), row(9, 1.2), row(11, 1.3)];
        assert_eq!(p0_from_rows(&rows, 1e-6), Some(9));
        assert_eq!(p0_from_rows(&rows[..2], 1e-6), None);
        assert_eq!(p0_from_rows(&[], 1e-6), None);
    }

    #[test]
    fn twist_spectrum_stays_on_unit_circle() {
        let rep = RepSet::for_dim(2).unwrap();
        let w = Word::parse("y").unwrap();
        let rows = convergence_table(&rep, &w, &odd_levels(5, 41, 2), &AmuOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.spectral_radius <= 1.0 + 1e-9));
        assert!(rows.last().unwrap().deviation < rows[0].deviation);
    }

    #[test]
    fn non_pseudo_anosov_has_no_threshold() {
        let rep = RepSet::for_dim(3).unwrap();
        let r = amu_certificate(&rep, &Word::parse("y").unwrap(), 31, &AmuOptions::default()).unwrap();
        assert_eq!(r.classification, "ReducibleOrCentral");
        assert_eq!(r.p0_observed, None);
        let rep2 = RepSet::for_dim(2).unwrap();
        let r = amu_certificate(&rep2, &Word::parse("y z y").unwrap(), 31, &AmuOptions::default()).unwrap();
        assert_eq!(r.classification, "Periodic");
        assert_eq!(r.p0_observed, None);
    }

    #[test]
    fn characters_have_unit_modulus() {
        let w = Word::parse("y^3 z^-1").unwrap();
        for chi in characters(&w, 3, &odd_levels(7, 31, 3)).unwrap() {
            assert!((chi.norm() - 1.0).abs() < 1e-12);
        }
    }
}
