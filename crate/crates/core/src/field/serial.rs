//! JSON documents for rational functions and matrices.
//!
//! A rational function is `{"num": [...], "den": [...]}` with coefficients in
//! ascending degree, each written as an exact string such as `"-3/2"` or `"4"`.

use std::fmt::Display;
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Matrix;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct FractionRepr {
    num: Vec<String>,
    den: Vec<String>,
}

fn coeff_strings<T: Field + Display>(p: &Polynomial<T>) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn parse_coeffs<T: Field + FromStr>(v: &[String]) -> Result<Polynomial<T>> {
    v.iter()
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| Error::Format(format!("bad coefficient {s:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Polynomial::new)
}

impl<T: Field + Display> Serialize for RationalFunction<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FractionRepr {
            num: coeff_strings(self.numer()),
            den: coeff_strings(self.denom()),
        }
        .serialize(s)
    }
}

impl<'de, T: Field + FromStr> Deserialize<'de> for RationalFunction<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FractionRepr::deserialize(d)?;
        let num = parse_coeffs(&repr.num).map_err(D::Error::custom)?;
        let den = parse_coeffs(&repr.den).map_err(D::Error::custom)?;
        RationalFunction::new(num, den).map_err(D::Error::custom)
    }
}

/// Exact rational written as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalString(pub Rational);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.trim()
            .parse()
            .map(RationalString)
            .map_err(|_| D::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexEntry {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexEntry> for Complex64 {
    fn from(z: ComplexEntry) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// A named matrix with its dimension parameter `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument<E> {
    #[serde(rename = "N")]
    pub n: usize,
    pub matrix_name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<E>>,
}

impl<E> MatrixDocument<E> {
    pub fn from_matrix<T: Ring>(
        name: &str,
        n: usize,
        m: &Matrix<T>,
        mut f: impl FnMut(&T) -> E,
    ) -> Self {
        Self {
            n,
            matrix_name: name.to_string(),
            rows: m.n_rows(),
            cols: m.n_cols(),
            entries: (0..m.n_rows())
                .map(|i| m.row(i).iter().map(&mut f).collect())
                .collect(),
        }
    }

    pub fn to_matrix<T: Ring>(&self, mut f: impl FnMut(&E) -> T) -> Result<Matrix<T>> {
        let m = Matrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(&mut f).collect())
                .collect(),
        )?;
        if m.n_rows() != self.rows || m.n_cols() != self.cols {
            return Err(Error::Format("declared shape disagrees with entries".into()));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Result<String>
    where
        E: Serialize,
    {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self>
    where
        E: for<'de> Deserialize<'de>,
    {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMatrix, RatFunc};

    #[test]
    fn ratfunc_json_shape() {
        let f = crate::qsymbols::qint(1);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":["1","0","-1"],"den":["0","1"]}"#);
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn deserialization_reduces() {
        let f: RatFunc = serde_json::from_str(r#"{"num":["-1","0","1"],"den":["2","2"]}"#).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"num":["-1/2","1/2"],"den":["1"]}"#);
        assert!(serde_json::from_str::<RatFunc>(r#"{"num":["1"],"den":[]}"#).is_err());
        assert!(serde_json::from_str::<RatFunc>(r#"{"num":["x"],"den":["1"]}"#).is_err());
    }

    #[test]
    fn rational_matrix_document() {
        let m = QMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 1.into()), Rational::new((-1).into(), 2.into())],
            vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())],
        ])
        .unwrap();
        let doc = MatrixDocument::from_matrix("Tstar", 2, &m, |v| RationalString(v.clone()));
        let json = doc.to_json().unwrap();
        assert!(json.contains("\"-1/2\""));
        let back = MatrixDocument::<RationalString>::from_json(&json).unwrap();
        assert_eq!(back.to_matrix(|e| e.0.clone()).unwrap(), m);
    }
}
