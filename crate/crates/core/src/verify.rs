//! Named pass/fail checks over a built representation.

use serde::Serialize;

use crate::classical::{closed_limits, hn_generator, hn_matrix};
use crate::error::Result;
use crate::mcg::{Generator, Sl2, Word};
use crate::numeric::{eval_matrix, max_abs_diff, oracle_matrices, odd_levels, PSetting, DEFAULT_POLE_TOLERANCE};
use crate::repbuild::{classical_limit, first_column_is_unit, RepSet};
use crate::{FMatrix, QMatrix};

pub const DEFAULT_ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Inclusive range of levels for the oracle comparison; `None` skips it.
    pub oracle_levels: Option<(i64, i64)>,
    pub oracle_tolerance: f64,
    pub pole_tolerance: f64,
    pub root_index: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_levels: None,
            oracle_tolerance: DEFAULT_ORACLE_TOLERANCE,
            pole_tolerance: DEFAULT_POLE_TOLERANCE,
            root_index: 1,
        }
    }
}

fn record(out: &mut Vec<Check>, name: &str, n: usize, res: Result<(bool, String)>) {
    let (passed, detail) = match res {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    out.push(Check {
        name: name.to_string(),
        n,
        passed,
        detail,
    });
}

fn verdict(ok: bool, what: &str) -> (bool, String) {
    (ok, if ok { what.to_string() } else { format!("{what}: mismatch") })
}

fn commutes(a: &FMatrix, b: &FMatrix) -> Result<bool> {
    Ok(a.checked_mul(b)? == b.checked_mul(a)?)
}

fn is_tridiagonal(m: &FMatrix) -> bool {
    (0..m.n_rows()).all(|i| {
        (0..m.n_cols()).all(|j| i.abs_diff(j) < 2 || num_traits::Zero::is_zero(&m[(i, j)]))
    })
}

/// Deterministic sample of `SL2(Z)` elements built from the two generators.
pub fn sl2_sample() -> Vec<Sl2> {
    ["y", "z", "y^-1", "y z^-1", "y^2 z^3", "z y^-2 z", "y z y", "y^-1 z^-1 y^3"]
        .iter()
        .map(|s| Word::parse(s).expect("sample word").sl2_image())
        .collect()
}

/// Exact checks for one dimension, plus the oracle sweep when requested.
pub fn check_rep(rep: &RepSet, opts: &VerifyOptions) -> Vec<Check> {
    let n = rep.dim();
    let mut out = Vec::new();

    record(&mut out, "braid", n, Ok(verdict(rep.braid_holds(), "T T* T = T* T T*")));

    record(
        &mut out,
        "centrality",
        n,
        (|| {
            let c = rep.rep_of_word(&Word::parse("y z y y z y")?)?;
            let ok = commutes(&c, &rep.t_hat)? && commutes(&c, &rep.tstar_hat)?;
            Ok(verdict(ok, "(t_y t_z t_y)^2 commutes with both generators"))
        })(),
    );

    record(
        &mut out,
        "recurrence",
        n,
        Ok(verdict(
            first_column_is_unit(&rep.t_hat) && rep.m_hat.iter().all(is_tridiagonal),
            "first column e_0 and tridiagonal recurrence matrices",
        )),
    );

    record(
        &mut out,
        "pairing-limit",
        n,
        (|| {
            let got = classical_limit(&rep.r_hat())?;
            Ok(verdict(got == closed_limits(n)?.r_limit, "R at X=-1"))
        })(),
    );
    record(
        &mut out,
        "recurrence-limit",
        n,
        (|| {
            let want = closed_limits(n)?.m_limits;
            let got = rep.m_hat.iter().map(classical_limit).collect::<Result<Vec<QMatrix>>>()?;
            Ok(verdict(got == want, "M^(n) at X=-1"))
        })(),
    );
    for (name, mat, gen) in [
        ("twist-limit", &rep.t_hat, Generator::Ty),
        ("dual-twist-limit", &rep.tstar_hat, Generator::Tz),
    ] {
        record(
            &mut out,
            name,
            n,
            (|| {
                let l = closed_limits(n)?;
                let closed = if gen == Generator::Ty { &l.that_limit } else { &l.tstar_limit };
                let got = classical_limit(mat)?;
                let ok = &got == closed && got == hn_generator(gen, n)?;
                Ok(verdict(ok, "closed form and h_N of the generator"))
            })(),
        );
    }

    record(
        &mut out,
        "hN-homomorphism",
        n,
        (|| {
            let sample = sl2_sample();
            for a in &sample {
                for b in &sample {
                    let lhs = hn_matrix(&a.mul(b), n)?;
                    let rhs = hn_matrix(a, n)?.checked_mul(&hn_matrix(b, n)?)?;
                    if lhs != rhs {
                        return Ok((false, format!("fails for {a:?} * {b:?}")));
                    }
                }
            }
            Ok((true, format!("{} pairs", sample.len() * sample.len())))
        })(),
    );

    record(
        &mut out,
        "order-four",
        n,
        (|| {
            let u = hn_generator(Generator::Ty, n)?;
            let v = hn_generator(Generator::Tz, n)?;
            let uvu = u.checked_mul(&v)?.checked_mul(&u)?;
            Ok(verdict(uvu.pow(4)?.is_identity(), "(UVU)^4 = I"))
        })(),
    );

    if let Some((lo, hi)) = opts.oracle_levels {
        record(&mut out, "oracle", n, oracle_check(rep, lo, hi, opts));
    }
    out
}

fn oracle_check(rep: &RepSet, lo: i64, hi: i64, opts: &VerifyOptions) -> Result<(bool, String)> {
    let n = rep.dim();
    let levels = odd_levels(lo, hi, n);
    let mut worst = 0.0f64;
    let mut worst_p = None;
    for &p in &levels {
        let s = PSetting::with_root_index(p, n, opts.root_index)?;
        let o = oracle_matrices(&s)?;
        let t = eval_matrix(&rep.t_hat, s.a, opts.pole_tolerance)?;
        let ts = eval_matrix(&rep.tstar_hat, s.a, opts.pole_tolerance)?;
        let d = max_abs_diff(&o.t, &t).max(max_abs_diff(&o.tstar, &ts));
        if d.is_nan() || d > worst {
            worst = d;
            worst_p = Some(p);
        }
    }
    let ok = worst <= opts.oracle_tolerance && !levels.is_empty();
    let detail = match worst_p {
        Some(p) => format!("{} levels, max deviation {worst:.3e} at p={p}", levels.len()),
        None => "no admissible levels".to_string(),
    };
    Ok((ok, detail))
}

/// Builds each dimension and runs [`check_rep`]; `corrupt` applies the negative control first.
pub fn verify_dims(dims: &[usize], opts: &VerifyOptions, corrupt: bool) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in dims {
        let mut rep = RepSet::for_dim(n)?;
        if corrupt {
            rep.corrupt();
        }
        out.extend(check_rep(&rep, opts));
    }
    Ok(out)
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
