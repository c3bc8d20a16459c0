//! Continuous-`l` picture: torsional potentials `U± = ±2 alpha(x)` (the
//! caustics), turning points, the classical Hamiltonian
//! `H = 2 alpha(l + 1/2) cos(phi)` with its trajectories, and the volume of
//! the tetrahedron obtained by creasing the quadrilateral along the diagonal.
//!
//! The potentials use `alpha(x)` while the Hamiltonian uses
//! `alpha(l + 1/2)`; both are kept as written and differ only near the ends
//! of the domain.

mod dynamics;
mod volume;

pub use dynamics::{default_time_step, integrate, integrate_trajectory, PhasePoint, Trajectory};
pub use volume::{cayley_menger_volume, tetrahedron_volume, volume_from_hamiltonian};

use crate::alpha::MatrixElements;
use crate::error::{Error, Result};
use crate::quadruple::QuadrupleJ;

/// Default sign-scan resolution for root finding along `x`.
pub const DEFAULT_SCAN: usize = 2048;
/// Absolute slack allowed when comparing `|k|` with the caustic maximum.
pub const BRACKET_SLACK: f64 = 1e-9;
const ROOT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausticSample {
    pub x: f64,
    pub u_plus: f64,
    pub u_minus: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CausticCurve {
    pub samples: Vec<CausticSample>,
}

impl CausticCurve {
    pub fn max_u_plus(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.u_plus))
    }
}

/// `U±(x) = ±2 alpha(x)` sampled uniformly over the continuous domain.
///
/// When the lower end of the domain is the excluded point `x = 1/2`, the
/// samples start one spacing above it.
pub fn potential_curves(j: &QuadrupleJ, n_samples: usize) -> Result<CausticCurve> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!("n_samples = {n_samples}, need at least 2")));
    }
    let me = MatrixElements::new(j)?;
    let samples = me
        .domain()
        .samples(n_samples)
        .into_iter()
        .map(|x| {
            let u = 2.0 * me.value(x).expect("sample inside domain");
            CausticSample { x, u_plus: u, u_minus: -u }
        })
        .collect();
    Ok(CausticCurve { samples })
}

/// `(argmax, max)` of `U+` over the continuous domain.
pub fn caustic_maximum(j: &QuadrupleJ, scan: usize) -> Result<(f64, f64)> {
    let (x, a) = MatrixElements::new(j)?.maximum(scan);
    Ok((x, 2.0 * a))
}

/// `H = 2 alpha(l + 1/2) cos(phi)`.
pub fn classical_hamiltonian(j: &QuadrupleJ, p: PhasePoint) -> Result<f64> {
    let me = MatrixElements::new(j)?;
    Ok(2.0 * me.value(p.l + 0.5)? * p.phi.cos())
}

/// All `x` in the domain with `2 alpha(x) = |k|`.
///
/// Sign changes of `2 alpha - |k|` are located on a `scan`-point grid and
/// refined by bisection to `1e-12`. For `k = 0` the roots are the ends of
/// the domain where `alpha` vanishes. At the caustic maximum the tangency
/// point is returned twice.
pub fn turning_points(j: &QuadrupleJ, k: f64, scan: usize) -> Result<Vec<f64>> {
    let me = MatrixElements::new(j)?;
    let dom = me.domain();
    let target = k.abs();
    let (x_max, a_max) = me.maximum(scan);
    let u_max = 2.0 * a_max;
    if target > u_max + BRACKET_SLACK {
        return Err(Error::NoRoots { k, max: u_max });
    }

    let g = |x: f64| 2.0 * me.value_unchecked(x) - target;

    if target == 0.0 {
        let mut roots = Vec::new();
        if !dom.lo_open || me.grid().l_min.to_f64() == 0.5 {
            roots.push(dom.lo);
        }
        roots.push(dom.hi);
        return Ok(roots);
    }

    let xs = dom.samples(scan.max(3));
    let mut roots = Vec::new();
    let mut prev_x = xs[0];
    let mut prev_g = g(prev_x);
    for &x in &xs[1..] {
        let gx = g(x);
        if gx == 0.0 {
            roots.push(x);
        } else if prev_g != 0.0 && (prev_g < 0.0) != (gx < 0.0) {
            roots.push(bisect(&g, prev_x, x));
        }
        prev_x = x;
        prev_g = gx;
    }
    if roots.is_empty() || u_max - target <= ROOT_TOL * u_max.max(1.0) {
        // tangency at the top of the caustic
        return Ok(vec![x_max, x_max]);
    }
    Ok(roots)
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a <= ROOT_TOL {
            break;
        }
        if (g(mid) < 0.0) == (ga < 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
