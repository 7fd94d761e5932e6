use thiserror::Error;

/// Position of a matrix entry, attached to evaluation failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

fn at(entry: &Option<Entry>) -> String {
    entry.map(|e| format!(" at entry {e}")).unwrap_or_default()
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero element")]
    DivisionByZero,
    #[error("pole at x = {point}{}", at(.entry))]
    Pole { point: String, entry: Option<Entry> },
    #[error("denominator modulus {modulus:e} below tolerance {tolerance:e}{}", at(.entry))]
    NearPole {
        modulus: f64,
        tolerance: f64,
        entry: Option<Entry>,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("zero exponent at position {position}")]
    ExponentZero { position: usize },
    #[error("trace {trace} is not hyperbolic (|trace| must exceed 2)")]
    NotHyperbolic { trace: String },
    #[error("p = {p} is not admissible for N = {n} (need odd p >= 2N+1)")]
    BadP { p: i64, n: usize },
    #[error("invalid dimension N = {0} (need N >= 2)")]
    BadDimension(usize),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    Convergence(usize),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
