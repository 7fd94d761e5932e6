//! The rational function field `K(X)` over an exact coefficient field `K`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Reduced fraction `num / den` of polynomials.
///
/// Invariants: `den` is nonzero and monic, `gcd(num, den) = 1`, and zero is
/// stored as `0 / 1`. Equality is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Field> RationalFunction<T> {
    /// Builds and reduces `num / den`.
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Ok(Self::normalized(num, den))
    }

    /// Makes `den` monic; assumes the pair is already coprime.
    fn normalized(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().expect("nonzero denominator").clone();
        let out = if lead.is_one() {
            Self { num, den }
        } else {
            let inv = T::one() / lead;
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        };
        out.debug_check();
        out
    }

    fn debug_check(&self) {
        debug_assert!(
            self.den.leading().is_some_and(One::is_one),
            "denominator not monic"
        );
        debug_assert!(
            self.num.gcd(&self.den).is_one(),
            "fraction not in lowest terms"
        );
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    /// `c * X^k` for any integer `k`; negative powers land in the denominator.
    pub fn monomial(c: T, k: i64) -> Self {
        let mag = k.unsigned_abs() as usize;
        if c.is_zero() {
            Self::zero()
        } else if k >= 0 {
            Self::from_poly(Polynomial::monomial(c, mag))
        } else {
            Self {
                num: Polynomial::constant(c),
                den: Polynomial::monomial(T::one(), mag),
            }
        }
    }

    pub fn numer(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Exact value at `x`. Since the fraction is reduced, a vanishing
    /// denominator is a genuine pole.
    pub fn eval_exact(&self, x: &T) -> Result<T>
    where
        T: fmt::Display,
    {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole {
                point: x.to_string(),
                entry: None,
            });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Floating evaluation at a complex point; fails when `|den(x)| < tol`.
    pub fn eval_complex<F>(&self, x: Complex<F>, tol: F) -> Result<Complex<F>>
    where
        T: ToPrimitive,
        F: Real,
    {
        let embed = |c: &T| {
            Complex::new(
                F::from(c.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan),
                F::zero(),
            )
        };
        let d = self.den.eval_with(&x, embed);
        if d.norm() < tol {
            return Err(Error::NearPole {
                modulus: d.norm().to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
                entry: None,
            });
        }
        Ok(self.num.eval_with(&x, embed) / d)
    }
}

impl<T: Field> Zero for RationalFunction<T> {
    fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Field> One for RationalFunction<T> {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
}

impl<T: Field> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: Self) -> RationalFunction<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RationalFunction::new(num, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: with g = gcd(b, d), gcd(a d/g + c b/g, b d/g) = gcd(that numerator, g).
        let g = self.den.gcd(&rhs.den);
        let (b_g, d_g) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.exact_div(&g).expect("divisor"),
                rhs.den.exact_div(&g).expect("divisor"),
            )
        };
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let den = &self.den * &d_g;
        if g.is_one() {
            return RationalFunction::normalized(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() {
            RationalFunction::normalized(num, den)
        } else {
            RationalFunction::normalized(
                num.exact_div(&h).expect("divisor"),
                den.exact_div(&h).expect("divisor"),
            )
        }
    }
}

impl<T: Field> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: Self) -> RationalFunction<T> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b).
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &Polynomial<T>, g: &Polynomial<T>| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("divisor")
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RationalFunction::normalized(num, den)
    }
}

impl<T: Field> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Field> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: Self) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Div for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    /// Panics on a zero divisor; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: Self) -> RationalFunction<T> {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: Self) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
forward_by_value!(Div, div);

impl<T: Field> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

impl<T: Field + fmt::Display> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RatFunc, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&n| q(n)).collect())
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let x = RatFunc::x();
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn cancellation_in_product() {
        let a = rf(&[1], &[1, 1]);
        let b = rf(&[1, 1], &[1]);
        assert_eq!(&a * &b, RatFunc::one());
    }

    #[test]
    fn exact_quotient() {
        let a = rf(&[-1, 0, 1], &[1]);
        let b = rf(&[-1, 1], &[1]);
        assert_eq!(a.checked_div(&b).unwrap(), rf(&[1, 1], &[1]));
    }

    #[test]
    fn division_by_zero_function() {
        assert!(matches!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            RatFunc::new(p(&[1]), p(&[])),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn denominator_is_monic() {
        let a = rf(&[3], &[0, 2]);
        assert_eq!(a.denom(), &p(&[0, 1]));
        assert_eq!(a.numer().coeffs()[0], Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn eval_exact_cancels_removable_singularity() {
        let f = rf(&[-1, 0, 1], &[1, 1]);
        assert_eq!(f.eval_exact(&q(-1)).unwrap(), q(-2));
        assert_eq!(RatFunc::x().eval_exact(&q(-1)).unwrap(), q(-1));
        let pole = rf(&[1], &[1, 1]);
        assert!(matches!(pole.eval_exact(&q(-1)), Err(Error::Pole { .. })));
    }

    #[test]
    fn eval_complex_near_pole() {
        let i = Complex::new(0.0_f64, 1.0);
        assert_eq!(RatFunc::x().eval_complex(i, 1e-12).unwrap(), i);
        let pole = rf(&[1], &[1, 1]);
        assert!(matches!(
            pole.eval_complex(Complex::new(-1.0, 0.0), 1e-12),
            Err(Error::NearPole { .. })
        ));
    }

    #[test]
    fn negative_monomial_and_powers() {
        let inv_x = RatFunc::monomial(q(1), -1);
        assert_eq!(&inv_x * &RatFunc::x(), RatFunc::one());
        assert_eq!(RatFunc::x().powi(-3).unwrap(), RatFunc::monomial(q(1), -3));
        assert_eq!(inv_x.powi(0).unwrap(), RatFunc::one());
    }
}
