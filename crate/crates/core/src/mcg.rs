//! Words in the Dehn twists `t_y`, `t_z`, their image in `SL2(Z)`, and the
//! trace classification of mapping classes of the one-holed torus.
//!
//! Word syntax: whitespace-separated tokens `y`, `z`, `y^k`, `z^k` with `k` a
//! nonzero integer, e.g. `"y z^-1"`. The matrix of `l1 l2 ... lk` is
//! `image(l1) * image(l2) * ... * image(lk)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::PSetting;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Ty,
    Tz,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::Ty => 'y',
            Generator::Tz => 'z',
        }
    }

    pub fn sl2(self) -> Sl2 {
        match self {
            Generator::Ty => Sl2::from_i64(1, 1, 0, 1),
            Generator::Tz => Sl2::from_i64(1, 0, -1, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(position) = letters.iter().position(|l| l.exp == 0) {
            return Err(Error::ExponentZero { position });
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse_word(s)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exp).sum()
    }

    pub fn sl2_image(&self) -> Sl2 {
        self.letters
            .iter()
            .fold(Sl2::identity(), |acc, l| acc.mul(&l.gen.sl2().pow(l.exp)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.gen.symbol())?;
            } else {
                write!(f, "{}^{}", l.gen.symbol(), l.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses the word grammar; positions in errors are byte offsets of the token.
pub fn parse_word(s: &str) -> Result<Word> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for token in s.split_whitespace() {
        let position = s[offset..].find(token).map_or(offset, |k| offset + k);
        offset = position + token.len();
        let (head, exp) = match token.split_once('^') {
            Some((head, e)) => {
                let exp: i64 = e.parse().map_err(|_| Error::Parse {
                    position: position + head.len() + 1,
                    message: format!("bad exponent {e:?} in token {token:?}"),
                })?;
                (head, exp)
            }
            None => (token, 1),
        };
        let gen = match head {
            "y" => Generator::Ty,
            "z" => Generator::Tz,
            _ => {
                return Err(Error::Parse {
                    position,
                    message: format!("unknown generator {head:?} (expected y or z)"),
                })
            }
        };
        if exp == 0 {
            return Err(Error::ExponentZero { position });
        }
        letters.push(Letter { gen, exp });
    }
    Ok(Word { letters })
}

/// Integer 2x2 matrix of determinant one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Sl2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Format("determinant is not 1".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into()).expect("determinant one")
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Sl2 {
        Sl2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Sl2 {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Sl2::identity(), |acc, _| acc.mul(&base))
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a.abs().is_one()
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Periodic,
    ReducibleOrCentral,
    PseudoAnosov,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Periodic => "Periodic",
            Classification::ReducibleOrCentral => "ReducibleOrCentral",
            Classification::PseudoAnosov => "PseudoAnosov",
        })
    }
}

pub fn classify_sl2(g: &Sl2) -> Classification {
    let t = g.trace().abs();
    let two = BigInt::from(2);
    if t > two {
        Classification::PseudoAnosov
    } else if t < two || g.is_plus_minus_identity() {
        Classification::Periodic
    } else {
        Classification::ReducibleOrCentral
    }
}

pub fn classify(w: &Word) -> Classification {
    classify_sl2(&w.sl2_image())
}

/// Modulus of the dominant eigenvalue, `(|tr| + sqrt(tr^2 - 4)) / 2`.
pub fn stretch_factor(g: &Sl2) -> Result<f64> {
    let t = g.trace().abs();
    if t <= BigInt::from(2) {
        return Err(Error::NotHyperbolic {
            trace: g.trace().to_string(),
        });
    }
    let t = t.to_f64().unwrap_or(f64::INFINITY);
    Ok((t + (t * t - 4.0).sqrt()) / 2.0)
}

/// `chi_p(w) = mu_{c_p}^{exponent sum}` evaluated at the setting's root.
pub fn chi_p(w: &Word, setting: &PSetting) -> Complex64 {
    setting.mu_c().powi(w.exponent_sum() as i32)
}

/// Convenience form taking the level and dimension directly.
pub fn chi_p_at(w: &Word, p: i64, n: usize) -> Result<Complex64> {
    Ok(chi_p(w, &PSetting::new(p, n)?))
}
