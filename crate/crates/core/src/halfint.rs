//! Half-integers for angular momentum quantities.
//!
//! A [`HalfInt`] stores twice its logical value, so `HalfInt::from_twice(17)`
//! is `8.5`. Addition, subtraction, negation and comparison are exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    /// Builds the half-integer whose doubled value is `twice`.
    #[inline]
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    #[inline]
    pub const fn integer(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Twice the logical value.
    #[inline]
    pub const fn twice(self) -> i64 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Exact halving; `None` when the result would leave the half-integer lattice.
    #[inline]
    pub fn halve(self) -> Option<Self> {
        if self.0 % 2 == 0 {
            Some(HalfInt(self.0 / 2))
        } else {
            None
        }
    }

    #[inline]
    pub fn double(self) -> Self {
        HalfInt(2 * self.0)
    }

    /// Exact for `|twice| < 2^53`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Returns the half-integer equal to `x`, if `2x` is an integer.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        let t = 2.0 * x;
        if t.is_finite() && t.fract() == 0.0 && t.abs() < 9.007_199_254_740_992e15 {
            Some(HalfInt(t as i64))
        } else {
            None
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{}{}.5", sign, self.0.abs() / 2)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn add(self, other: HalfInt) -> HalfInt {
        HalfInt(self.0 + other.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn sub(self, other: HalfInt) -> HalfInt {
        HalfInt(self.0 - other.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}
