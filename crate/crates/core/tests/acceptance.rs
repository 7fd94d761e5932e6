//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use torus_qrep::classical::{closed_limits, hn_generator, hn_matrix};
use torus_qrep::field::eval_at_minus_one;
use torus_qrep::mcg::{Generator, Word};
use torus_qrep::numeric::{
    amu_certificate, eval_matrix, max_abs_diff, odd_levels, oracle_matrices, spectral_radius, to_complex,
    AmuOptions, PSetting, DEFAULT_POLE_TOLERANCE,
};
use torus_qrep::qsymbols::{rhat, QContext};
use torus_qrep::repbuild::{classical_limit, RepSet};
use torus_qrep::verify::{check_rep, VerifyOptions};
use torus_qrep::{QMatrix, Rational, Result};

const DIMS: std::ops::RangeInclusive<usize> = 2..=6;
const ORACLE_TOL: f64 = 1e-9;
const EIG_TOL: f64 = 1e-9;
const DEVIATION_DROP: f64 = 5.0;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn fact(n: i64) -> Rational {
    (1..=n).fold(q(1), |acc, k| acc * q(k))
}

fn qm(rows: &[&[Rational]]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn braid(reps: &[RepSet]) -> Result<(bool, String)> {
    let bad: Vec<usize> = reps.iter().filter(|r| !r.braid_holds()).map(RepSet::dim).collect();
    Ok((bad.is_empty(), format!("N=2..6, failing: {bad:?}")))
}

fn twist_limits(reps: &[RepSet]) -> Result<(bool, String)> {
    let mut ok = true;
    for rep in reps {
        let n = rep.dim();
        let closed = closed_limits(n)?;
        let t = classical_limit(&rep.t_hat)?;
        let ts = classical_limit(&rep.tstar_hat)?;
        ok &= t == closed.that_limit && t == hn_generator(Generator::Ty, n)?;
        ok &= ts == closed.tstar_limit && ts == hn_generator(Generator::Tz, n)?;
    }
    let half = Rational::new(BigInt::from(-1), BigInt::from(2));
    let t2 = classical_limit(&reps[0].t_hat)?;
    let ts2 = classical_limit(&reps[0].tstar_hat)?;
    ok &= t2 == qm(&[&[q(1), q(2)], &[q(0), q(1)]]);
    ok &= ts2 == qm(&[&[q(1), q(0)], &[half, q(1)]]);
    Ok((ok, format!("N=2: T(-1)={t2}, T*(-1)={ts2}")))
}

fn pairing_limits() -> Result<(bool, String)> {
    let mut pairs = 0;
    for n_dim in DIMS {
        let ctx = QContext::new(n_dim)?;
        let big = n_dim as i64;
        for n in 0..n_dim {
            for m in 0..n_dim {
                let (ni, mi) = (n as i64, m as i64);
                let sign_pow = q(-4);
                let power = if ni >= mi {
                    (0..ni - mi).fold(q(1), |acc, _| acc * sign_pow.clone())
                } else {
                    q(1) / (0..mi - ni).fold(q(1), |acc, _| acc * sign_pow.clone())
                };
                let want = power * fact(mi) * fact(big - 1 - mi) / (fact(ni) * fact(big - 1 - ni));
                if eval_at_minus_one(&rhat(n, m, &ctx))? != want {
                    return Ok((false, format!("N={n_dim} (n,m)=({n},{m})")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("{pairs} index pairs")))
}

fn recurrence_limits(reps: &[RepSet]) -> Result<(bool, String)> {
    let mut count = 0;
    for rep in reps {
        let big = rep.dim() as i64;
        for (n, m_hat) in rep.m_hat.iter().enumerate() {
            let d = q(n as i64 + 1);
            let want = QMatrix::from_fn(rep.dim(), rep.dim(), |m, l| {
                let mi = m as i64;
                if l + 1 == m {
                    q(mi) / d.clone()
                } else if l == m {
                    q(2 * (big - 2 * mi - 1)) / d.clone()
                } else if l == m + 1 {
                    q(-4 * (big - mi - 1)) / d.clone()
                } else {
                    Rational::zero()
                }
            });
            if classical_limit(m_hat)? != want {
                return Ok((false, format!("N={big} n={n}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} recurrence matrices")))
}

fn oracle(reps: &[RepSet]) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut levels = 0;
    for rep in reps.iter().filter(|r| r.dim() <= 4) {
        let n = rep.dim();
        for p in odd_levels(2 * n as i64 + 1, 51, n) {
            let s = PSetting::new(p, n)?;
            let o = oracle_matrices(&s)?;
            let t = eval_matrix(&rep.t_hat, s.a, DEFAULT_POLE_TOLERANCE)?;
            let ts = eval_matrix(&rep.tstar_hat, s.a, DEFAULT_POLE_TOLERANCE)?;
            worst = worst.max(max_abs_diff(&o.t, &t)).max(max_abs_diff(&o.tstar, &ts));
            levels += 1;
        }
    }
    Ok((worst < ORACLE_TOL, format!("{levels} levels, max deviation {worst:.2e} (tol {ORACLE_TOL:e})")))
}

fn certificate(reps: &[RepSet]) -> Result<(bool, String)> {
    let w = Word::parse("y z^-1")?;
    let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
    let mut ok = true;
    let mut notes = Vec::new();
    for rep in reps.iter().filter(|r| r.dim() <= 3) {
        let n = rep.dim();
        let report = amu_certificate(rep, &w, 101, &AmuOptions::default())?;
        let first = report.rows.first().map_or(f64::NAN, |r| r.deviation);
        let last = report.rows.last().map_or(f64::NAN, |r| r.deviation);
        let target = golden_sq.powi(n as i32 - 1);
        let rho = spectral_radius(&to_complex(&hn_matrix(&w.sl2_image(), n)?))?;
        ok &= report.classification == "PseudoAnosov";
        ok &= report.p0_observed.is_some();
        ok &= first >= DEVIATION_DROP * last;
        ok &= (rho - target).abs() < EIG_TOL;
        notes.push(format!(
            "N={n}: p0={:?}, deviation {first:.3e} -> {last:.3e}, |rho(hN)-target|={:.1e}",
            report.p0_observed,
            (rho - target).abs()
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn structural(reps: &[RepSet]) -> Result<(bool, String)> {
    let wanted = ["centrality", "hN-homomorphism", "order-four"];
    let checks: Vec<_> = reps
        .iter()
        .flat_map(|r| check_rep(r, &VerifyOptions::default()))
        .filter(|c| wanted.contains(&c.name.as_str()))
        .collect();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}@N={}", c.name, c.n)).collect();
    Ok((failed.is_empty() && checks.len() == 3 * DIMS.count(), format!("{} checks, failing: {failed:?}", checks.len())))
}

fn negative_controls() -> Result<(bool, String)> {
    let opts = VerifyOptions {
        oracle_levels: Some((7, 21)),
        ..Default::default()
    };
    let mut rep = RepSet::for_dim(3)?;
    rep.corrupt();
    let caught = check_rep(&rep, &opts).iter().filter(|c| !c.passed).count();

    let rep2 = RepSet::for_dim(2)?;
    let mut leaked = Vec::new();
    for s in ["y", "z^-3", "y z y", "y z y y z y", "y z", "y y^-1", "z^2 y^-1 z^-2"] {
        let w = Word::parse(s)?;
        let r = amu_certificate(&rep2, &w, 41, &AmuOptions::default())?;
        if r.classification == "PseudoAnosov" || r.p0_observed.is_some() {
            leaked.push(s);
        }
    }
    Ok((caught > 0 && leaked.is_empty(), format!("{caught} checks failed on corrupted build; leaked p0: {leaked:?}")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let reps: Vec<RepSet> = DIMS.map(|n| RepSet::for_dim(n).expect("build")).collect();
    println!("built N=2..6 in {:.1?}", start.elapsed());

    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<(bool, String)> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 braid relation, exact", Box::new(|| braid(&reps))),
        ("2 twist limits at X=-1", Box::new(|| twist_limits(&reps))),
        ("3 pairing ratio limits", Box::new(pairing_limits)),
        ("4 recurrence matrix limits", Box::new(|| recurrence_limits(&reps))),
        ("5 level oracle agreement", Box::new(|| oracle(&reps))),
        ("6 infinite-order certificate", Box::new(|| certificate(&reps))),
        ("7 structural identities", Box::new(|| structural(&reps))),
        ("8 negative controls", Box::new(negative_controls)),
    ];

    let mut all = true;
    for (name, run) in &criteria {
        let t0 = Instant::now();
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= ok;
        println!(
            "{} criterion {name} ({:.1?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            t0.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
