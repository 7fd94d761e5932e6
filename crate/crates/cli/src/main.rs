use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use torus_qrep::classical::hn_matrix;
use torus_qrep::field::{ComplexEntry, Matrix, MatrixDocument, RationalString};
use torus_qrep::mcg::Word;
use torus_qrep::numeric::amu::DEFAULT_MARGIN;
use torus_qrep::numeric::{
    amu_certificate, convergence_table, eval_matrix, odd_levels, to_complex, AmuOptions, AmuReport,
    ConvergenceRow, PSetting, DEFAULT_POLE_TOLERANCE,
};
use torus_qrep::repbuild::{classical_limit, RepSet};
use torus_qrep::scalar::Ring;
use torus_qrep::verify::{all_passed, verify_dims, Check, VerifyOptions, DEFAULT_ORACLE_TOLERANCE};
use torus_qrep::{CMatrix, FMatrix, QMatrix};

#[derive(Parser)]
#[command(name = "torus-qrep", version, about = "Quantum representations of the one-holed torus mapping class group")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Near-pole tolerance for complex evaluation.
    #[arg(long, default_value_t = DEFAULT_POLE_TOLERANCE, global = true)]
    tolerance: f64,
    /// Spectral radius must exceed 1 + margin for a level to count towards p0.
    #[arg(long, default_value_t = DEFAULT_MARGIN, global = true)]
    margin: f64,
    /// Root index k in A = -exp(2 pi i k / p).
    #[arg(long, default_value_t = 1, global = true)]
    root_index: i64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    #[value(name = "T")]
    T,
    #[value(name = "Tstar")]
    Tstar,
    #[value(name = "M")]
    M,
    #[value(name = "Z")]
    Z,
    #[value(name = "Y")]
    Y,
    #[value(name = "Zprime")]
    Zprime,
    #[value(name = "R")]
    R,
    #[value(name = "hN")]
    HN,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::T => "T",
            What::Tstar => "Tstar",
            What::M => "M",
            What::Z => "Z",
            What::Y => "Y",
            What::Zprime => "Zprime",
            What::R => "R",
            What::HN => "hN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EvalPoint {
    Symbolic,
    MinusOne,
    Level(i64),
}

impl FromStr for EvalPoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symbolic" => Ok(EvalPoint::Symbolic),
            "x=-1" => Ok(EvalPoint::MinusOne),
            _ => {
                let p = s
                    .strip_prefix("p=")
                    .ok_or_else(|| format!("expected symbolic, x=-1 or p=<odd>, got {s:?}"))?;
                let p: i64 = p.parse().map_err(|e| format!("bad level {p:?}: {e}"))?;
                if p % 2 == 0 {
                    return Err(format!("level p={p} must be odd"));
                }
                Ok(EvalPoint::Level(p))
            }
        }
    }
}

/// Inclusive `a..b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span(i64, i64);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound {t:?}: {e}"));
        let span = match s.split_once("..") {
            Some((a, b)) => Span(num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                Span(v, v)
            }
        };
        if span.0 > span.1 {
            return Err(format!("empty range {s}"));
        }
        Ok(span)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit one matrix of the construction.
    Matrices {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        /// Which recurrence matrix, for `--what M`.
        #[arg(long)]
        index: Option<usize>,
        /// Mapping class for `--what hN`.
        #[arg(long)]
        word: Option<String>,
        /// symbolic, x=-1, or p=<odd>.
        #[arg(long, default_value = "symbolic")]
        eval: EvalPoint,
    },
    /// Run the exact check suite, optionally with the level oracle.
    Verify {
        #[arg(long = "N")]
        n: Span,
        #[arg(long)]
        oracle: bool,
        /// Oracle levels; defaults to 2N+1..51.
        #[arg(long)]
        p: Option<Span>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_TOLERANCE)]
        oracle_tolerance: f64,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Spectral certificate of infinite order for a mapping class.
    Amu {
        #[arg(long)]
        word: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        pmax: i64,
    },
    /// Convergence table of the rescaled quantum matrices to the classical action.
    Limit {
        #[arg(long)]
        word: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        p: Span,
    },
}

struct Output {
    text: String,
    ok: bool,
}

fn header(cli: &Cli) -> String {
    format!(
        "# tolerance={:e} margin={:e} root_index={}\n",
        cli.tolerance, cli.margin, cli.root_index
    )
}

fn fixed_matrix(rep: &RepSet, what: What, index: Option<usize>) -> anyhow::Result<FMatrix> {
    Ok(match what {
        What::T => rep.t_hat.clone(),
        What::Tstar => rep.tstar_hat.clone(),
        What::Z => rep.z_hat.clone(),
        What::Y => rep.y_hat.clone(),
        What::Zprime => rep.zprime_hat.clone(),
        What::R => rep.r_hat(),
        What::M => {
            let i = index.ok_or_else(|| anyhow!("--what M needs --index"))?;
            rep.m_hat
                .get(i)
                .cloned()
                .ok_or_else(|| anyhow!("--index {i} out of range 0..{}", rep.m_hat.len()))?
        }
        What::HN => unreachable!("hN is rational"),
    })
}

fn grid<T: Ring>(m: &Matrix<T>, cell: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    (0..m.n_rows()).map(|i| m.row(i).iter().map(&cell).collect()).collect()
}

fn render_grid(format: Format, title: &str, cells: Vec<Vec<String>>) -> String {
    match format {
        Format::Csv => cells
            .iter()
            .map(|r| r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
        _ => {
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
            let mut s = format!("{title}\n");
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                s.push_str(&format!("  [ {} ]\n", line.join("  ")));
            }
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', ' ']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn complex_str(z: &Complex64) -> String {
    format!("{:+.15e}{:+.15e}i", z.re, z.im)
}

fn emit_rational(cli: &Cli, name: &str, n: usize, m: &QMatrix) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => MatrixDocument::from_matrix(name, n, m, |v| RationalString(v.clone())).to_json()? + "\n",
        f => render_grid(f, &format!("{name} (N={n})"), grid(m, ToString::to_string)),
    })
}

fn emit_complex(cli: &Cli, name: &str, n: usize, m: &CMatrix) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => MatrixDocument::from_matrix(name, n, m, |z| ComplexEntry::from(*z)).to_json()? + "\n",
        Format::Csv => render_grid(Format::Csv, "", grid(m, complex_str)),
        Format::Pretty => header(cli) + &render_grid(Format::Pretty, &format!("{name} (N={n})"), grid(m, complex_str)),
    })
}

fn cmd_matrices(
    cli: &Cli,
    n: usize,
    what: What,
    index: Option<usize>,
    word: Option<&str>,
    eval: EvalPoint,
) -> anyhow::Result<Output> {
    let name = match (what, index) {
        (What::M, Some(i)) => format!("M{i}"),
        _ => what.name().to_string(),
    };
    let text = if what == What::HN {
        let w = Word::parse(word.ok_or_else(|| anyhow!("--what hN needs --word"))?)?;
        let m = hn_matrix(&w.sl2_image(), n)?;
        match eval {
            EvalPoint::Level(_) => emit_complex(cli, &name, n, &to_complex(&m))?,
            _ => emit_rational(cli, &name, n, &m)?,
        }
    } else {
        if word.is_some() {
            bail!("--word only applies to --what hN");
        }
        let rep = RepSet::for_dim(n)?;
        let m = fixed_matrix(&rep, what, index)?;
        match eval {
            EvalPoint::Symbolic => match cli.format {
                Format::Json => MatrixDocument::from_matrix(&name, n, &m, Clone::clone).to_json()? + "\n",
                f => render_grid(f, &format!("{name} (N={n})"), grid(&m, ToString::to_string)),
            },
            EvalPoint::MinusOne => emit_rational(cli, &name, n, &classical_limit(&m)?)?,
            EvalPoint::Level(p) => {
                let s = PSetting::with_root_index(p, n, cli.root_index)?;
                emit_complex(cli, &name, n, &eval_matrix(&m, s.a, cli.tolerance)?)?
            }
        }
    };
    Ok(Output { text, ok: true })
}

fn dims(span: Span) -> anyhow::Result<Vec<usize>> {
    if span.0 < 2 {
        bail!("N must be at least 2");
    }
    Ok((span.0..=span.1).map(|n| n as usize).collect())
}

fn render_checks(cli: &Cli, checks: &[Check]) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(checks)? + "\n",
        Format::Csv => {
            let mut s = String::from("check,N,passed,detail\n");
            for c in checks {
                writeln!(s, "{},{},{},{}", c.name, c.n, c.passed, csv_field(&c.detail))?;
            }
            s
        }
        Format::Pretty => {
            let mut s = header(cli);
            for c in checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag} {:<18} N={}  {}", c.name, c.n, c.detail)?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(s, "{} checks, {failed} failed", checks.len())?;
            s
        }
    })
}

fn cmd_verify(cli: &Cli, n: Span, oracle: bool, p: Option<Span>, oracle_tol: f64, corrupt: bool) -> anyhow::Result<Output> {
    let dims = dims(n)?;
    let mut checks = Vec::new();
    for d in dims {
        let oracle_levels = oracle.then(|| p.map_or((2 * d as i64 + 1, 51), |s| (s.0, s.1)));
        let opts = VerifyOptions {
            oracle_levels,
            oracle_tolerance: oracle_tol,
            pole_tolerance: cli.tolerance,
            root_index: cli.root_index,
        };
        checks.extend(verify_dims(&[d], &opts, corrupt)?);
    }
    Ok(Output {
        text: render_checks(cli, &checks)?,
        ok: all_passed(&checks),
    })
}

fn amu_options(cli: &Cli) -> AmuOptions {
    AmuOptions {
        margin: cli.margin,
        tolerance: cli.tolerance,
        root_index: cli.root_index,
    }
}

fn rows_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("p,spectral_radius,deviation\n");
    for r in rows {
        s.push_str(&format!("{},{:.15e},{:.15e}\n", r.p, r.spectral_radius, r.deviation));
    }
    s
}

fn rows_pretty(rows: &[ConvergenceRow]) -> String {
    let mut s = format!("{:>6}  {:>22}  {:>22}\n", "p", "spectral_radius", "deviation");
    for r in rows {
        s.push_str(&format!("{:>6}  {:>22.15e}  {:>22.15e}\n", r.p, r.spectral_radius, r.deviation));
    }
    s
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:.15e}"))
}

fn render_report(cli: &Cli, r: &AmuReport) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(r)? + "\n",
        Format::Csv => rows_csv(&r.rows),
        Format::Pretty => {
            let mut s = header(cli);
            writeln!(s, "word: {}", r.word)?;
            writeln!(s, "N: {}", r.n)?;
            writeln!(s, "classification: {} (trace {})", r.classification, r.trace)?;
            writeln!(s, "stretch: {}", opt_f64(r.stretch))?;
            writeln!(s, "target_eig: {}", opt_f64(r.target_eig))?;
            writeln!(
                s,
                "p0_observed: {}",
                r.p0_observed.map_or("none".to_string(), |p| p.to_string())
            )?;
            s + &rows_pretty(&r.rows)
        }
    })
}

fn cmd_amu(cli: &Cli, word: &str, n: usize, pmax: i64) -> anyhow::Result<Output> {
    let w = Word::parse(word)?;
    let rep = RepSet::for_dim(n)?;
    let report = amu_certificate(&rep, &w, pmax, &amu_options(cli))?;
    Ok(Output {
        text: render_report(cli, &report)?,
        ok: true,
    })
}

fn cmd_limit(cli: &Cli, word: &str, n: usize, p: Span) -> anyhow::Result<Output> {
    let w = Word::parse(word)?;
    let rep = RepSet::for_dim(n)?;
    let levels = odd_levels(p.0, p.1, n);
    if levels.is_empty() {
        bail!("no odd levels p >= {} in {}..{}", 2 * n + 1, p.0, p.1);
    }
    let rows = convergence_table(&rep, &w, &levels, &amu_options(cli))?;
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => rows_csv(&rows),
        Format::Pretty => header(cli) + &format!("word: {w}\nN: {n}\n") + &rows_pretty(&rows),
    };
    Ok(Output { text, ok: true })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Matrices {
            n,
            what,
            index,
            word,
            eval,
        } => cmd_matrices(cli, *n, *what, *index, word.as_deref(), *eval),
        Command::Verify {
            n,
            oracle,
            p,
            oracle_tolerance,
            corrupt,
        } => cmd_verify(cli, *n, *oracle, *p, *oracle_tolerance, *corrupt),
        Command::Amu { word, n, pmax } => cmd_amu(cli, word, *n, *pmax),
        Command::Limit { word, n, p } => cmd_limit(cli, word, *n, *p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
