//! Scalar traits shared by the generic polynomial and matrix code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring with identity, by-value arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
///
/// `Div` may panic on a zero divisor; callers test `is_zero` first.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Floating-point scalar usable as the real part of a matrix entry.
pub trait Real: num_traits::Float + Debug {}

impl<T> Real for T where T: num_traits::Float + Debug {}
