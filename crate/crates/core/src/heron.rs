//! Heron (Archimedes) form of a triangle, extended to arbitrary signed sides.
//!
//! For sides `a, b, c` the quartic
//!
//! ```text
//! 16 F² = (a+b+c)(-a+b+c)(a-b+c)(a+b-c)
//! ```
//!
//! is the squared area times 16 whenever the sides close a triangle. Over
//! doubled-integer sides every factor doubles, so the integer quartic `E`
//! evaluated on `2a, 2b, 2c` gives `F² = E / 256` exactly.

use num_rational::Ratio;

use crate::HalfInt;

/// Exact value of `F²`, stored as the integer numerator over the fixed
/// denominator 256.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AreaSquared {
    quartic: i128,
}

impl AreaSquared {
    pub const DENOMINATOR: i128 = 256;

    #[inline]
    pub const fn from_quartic(quartic: i128) -> Self {
        AreaSquared { quartic }
    }

    /// The integer `E(2a, 2b, 2c)`; `F² = E / 256`.
    #[inline]
    pub const fn quartic(self) -> i128 {
        self.quartic
    }

    /// `16 F² = E / 16`.
    pub fn sixteen_times(self) -> Ratio<i128> {
        Ratio::new(self.quartic, 16)
    }

    pub fn to_ratio(self) -> Ratio<i128> {
        Ratio::new(self.quartic, Self::DENOMINATOR)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.quartic as f64 / 256.0
    }

    #[inline]
    pub fn signum(self) -> i8 {
        self.quartic.signum() as i8
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.quartic == 0
    }
}

/// Integer Heron quartic `(a+b+c)(-a+b+c)(a-b+c)(a+b-c)`.
#[inline]
pub fn heron_quartic(a: i128, b: i128, c: i128) -> i128 {
    (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
}

/// Exact `F²(a, b, c)`; may be negative for sides that do not close a triangle.
pub fn heron_squared(a: HalfInt, b: HalfInt, c: HalfInt) -> AreaSquared {
    AreaSquared::from_quartic(heron_quartic(
        a.twice() as i128,
        b.twice() as i128,
        c.twice() as i128,
    ))
}

/// Floating `16 F²(x, b, c) = ((b+c)² - x²)(x² - (b-c)²)`, the form used
/// away from the lattice.
#[inline]
pub fn heron_quartic_f64(x: f64, b: f64, c: f64) -> f64 {
    let sum = b + c;
    let diff = b - c;
    (sum * sum - x * x) * (x * x - diff * diff)
}

/// `d/dx` of [`heron_quartic_f64`].
#[inline]
pub fn heron_quartic_f64_dx(x: f64, b: f64, c: f64) -> f64 {
    let sum = b + c;
    let diff = b - c;
    2.0 * x * (sum * sum - x * x) - 2.0 * x * (x * x - diff * diff)
}
