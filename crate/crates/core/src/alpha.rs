//! Off-diagonal matrix elements of the volume operator in the `J12` basis.
//!
//! ```text
//! alpha(x) = F(x, J1, J2) F(x, J3, J4) / sqrt((2x+1)(2x-1)),   J_i = j_i + 1/2
//! ```
//!
//! `alpha` vanishes at `l_min` and at `l_max + 1` and is positive in between.
//! When `l_min < 1` the factor `2x - 1` limits the domain to `x > 1/2`.

use crate::error::{Error, Result};
use crate::heron::{heron_quartic, heron_quartic_f64, heron_quartic_f64_dx, AreaSquared};
use crate::quadruple::{validate, LGrid, QuadrupleJ};
use crate::HalfInt;

/// Precomputed evaluator of `alpha` and its derivative for one quadruple.
#[derive(Clone, Debug)]
pub struct MatrixElements {
    j: QuadrupleJ,
    grid: LGrid,
    sides_twice: [i128; 4],
    sides: [f64; 4],
}

/// Continuous domain of `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaDomain {
    pub lo: f64,
    pub hi: f64,
    /// True when the lower end is the excluded point `x = 1/2`.
    pub lo_open: bool,
}

impl AlphaDomain {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        above && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `n` points spanning the domain; an open lower end is replaced by the
    /// next point of a uniform `n`-point grid on `(lo, hi]`.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "need at least two samples");
        if self.lo_open {
            let h = self.width() / n as f64;
            (1..=n).map(|i| if i == n { self.hi } else { self.lo + h * i as f64 }).collect()
        } else {
            let h = self.width() / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { self.hi } else { self.lo + h * i as f64 }).collect()
        }
    }
}

impl MatrixElements {
    pub fn new(j: &QuadrupleJ) -> Result<Self> {
        let grid = validate(j)?;
        let sides = j.sides();
        Ok(MatrixElements {
            j: *j,
            grid,
            sides_twice: sides.map(|s| s.twice() as i128),
            sides: sides.map(HalfInt::to_f64),
        })
    }

    pub fn quadruple(&self) -> &QuadrupleJ {
        &self.j
    }

    pub fn grid(&self) -> &LGrid {
        &self.grid
    }

    pub fn domain(&self) -> AlphaDomain {
        let l_min = self.grid.l_min.to_f64();
        AlphaDomain {
            lo: l_min.max(0.5),
            hi: self.grid.domain_end().to_f64(),
            lo_open: l_min <= 0.5,
        }
    }

    /// The two exact triangle forms `F²(l, J1, J2)` and `F²(l, J3, J4)`.
    pub fn triangle_forms(&self, l: HalfInt) -> (AreaSquared, AreaSquared) {
        let t = l.twice() as i128;
        let [a, b, c, d] = self.sides_twice;
        (
            AreaSquared::from_quartic(heron_quartic(t, a, b)),
            AreaSquared::from_quartic(heron_quartic(t, c, d)),
        )
    }

    fn check(&self, x: f64) -> Result<()> {
        let dom = self.domain();
        if x.is_nan() || !dom.contains(x) {
            return Err(Error::DomainError { x, lo: dom.lo, hi: dom.hi });
        }
        Ok(())
    }

    /// `alpha` at a lattice point, from the exact Heron integers; only the
    /// final square root and division are rounded.
    pub fn at_lattice(&self, l: HalfInt) -> Result<f64> {
        self.check(l.to_f64())?;
        let (first, second) = self.triangle_forms(l);
        let product = first.quartic() * second.quartic();
        let t = l.twice() as f64;
        // alpha² = E1 E2 / (65536 (t² - 1)), with t = 2l.
        Ok((product as f64).sqrt() / (256.0 * (t * t - 1.0).sqrt()))
    }

    /// `alpha` at any point of the continuous domain.
    pub fn value(&self, x: f64) -> Result<f64> {
        if let Some(l) = HalfInt::from_f64_exact(x) {
            return self.at_lattice(l);
        }
        self.check(x)?;
        Ok(self.value_unchecked(x))
    }

    pub(crate) fn value_unchecked(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.sides;
        let q = heron_quartic_f64(x, a, b).max(0.0) * heron_quartic_f64(x, c, d).max(0.0);
        q.sqrt() / (16.0 * (4.0 * x * x - 1.0).sqrt())
    }

    /// `d alpha / dx` from the closed-form derivatives of both quartics.
    /// Defined on the open interior of the domain.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let dom = self.domain();
        if x <= dom.lo || x >= dom.hi {
            return Err(Error::DomainError { x, lo: dom.lo, hi: dom.hi });
        }
        Ok(self.derivative_unchecked(x))
    }

    pub(crate) fn derivative_unchecked(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.sides;
        let q1 = heron_quartic_f64(x, a, b);
        let q2 = heron_quartic_f64(x, c, d);
        let dq1 = heron_quartic_f64_dx(x, a, b);
        let dq2 = heron_quartic_f64_dx(x, c, d);
        let denom = 4.0 * x * x - 1.0;
        let prod = q1 * q2;
        if prod <= 0.0 {
            return 0.0;
        }
        // alpha = sqrt(q1 q2) / (16 sqrt(4x² - 1))
        (dq1 * q2 + q1 * dq2) / (32.0 * prod.sqrt() * denom.sqrt())
            - self.value_unchecked(x) * 4.0 * x / denom
    }

    /// Values at the interior grid points `l_min + 1, ..., l_max`.
    pub fn offdiagonal(&self) -> Vec<f64> {
        (1..self.grid.dim)
            .map(|i| self.at_lattice(self.grid.l_at(i)).expect("interior grid point"))
            .collect()
    }

    /// Maximizer and maximum of `alpha` over the continuous domain.
    ///
    /// Scans `scan` points, then bisects on the sign of the derivative
    /// around the best sample. When the lower end is open and `alpha`
    /// grows towards it, the returned value is `+inf`.
    pub fn maximum(&self, scan: usize) -> (f64, f64) {
        let dom = self.domain();
        if self.grid.l_min == HalfInt::ZERO {
            // alpha ~ 1 / sqrt(2x - 1) near x = 1/2
            return (dom.lo, f64::INFINITY);
        }
        let xs = dom.samples(scan.max(3));
        let (best, _) = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| (i, self.value_unchecked(x)))
            .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        let mut a = xs[best.saturating_sub(1)];
        let mut b = xs[(best + 1).min(xs.len() - 1)];
        if best == 0 || best == xs.len() - 1 {
            let x = xs[best];
            return (x, self.value_unchecked(x));
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= 1e-14 * mid.abs().max(1.0) {
                break;
            }
            if self.derivative_unchecked(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let x = 0.5 * (a + b);
        (x, self.value_unchecked(x))
    }
}

/// `alpha(j, x)`; see [`MatrixElements`] for repeated evaluation.
pub fn alpha(j: &QuadrupleJ, x: f64) -> Result<f64> {
    MatrixElements::new(j)?.value(x)
}
