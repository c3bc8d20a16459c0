use std::f64::consts::PI;

use crate::alpha::MatrixElements;
use crate::error::{Error, Result};
use crate::quadruple::QuadrupleJ;

/// A point `(l, phi)` of the two-dimensional phase space. The dihedral angle
/// along the hinge is `pi/2 + phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub l: f64,
    pub phi: f64,
}

impl PhasePoint {
    /// Reduces `phi` to `(-pi, pi]`.
    pub fn new(l: f64, phi: f64) -> Self {
        PhasePoint { l, phi: reduce_angle(phi) }
    }

    pub fn dihedral(&self) -> f64 {
        PI / 2.0 + self.phi
    }
}

fn reduce_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Sampled solution of Hamilton's equations, one entry per step including
/// the start.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub l: Vec<f64>,
    pub phi: Vec<f64>,
    pub h: Vec<f64>,
    /// Set when a step would have left the domain; the arrays end at the
    /// last valid state.
    pub exited_domain: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_t |H(t) - H(0)| / |H(0)|`.
    pub fn max_relative_drift(&self) -> f64 {
        self.max_abs_drift() / self.h[0].abs()
    }

    pub fn max_abs_drift(&self) -> f64 {
        let h0 = self.h[0];
        self.h.iter().fold(0.0, |m, h| m.max((h - h0).abs()))
    }
}

/// `1e-3 / max alpha`, with the maximum over the grid (or the continuous
/// maximum for a one-point grid).
pub fn default_time_step(j: &QuadrupleJ) -> Result<f64> {
    let me = MatrixElements::new(j)?;
    let grid_max = me.offdiagonal().into_iter().fold(0.0, f64::max);
    let scale = if grid_max > 0.0 { grid_max } else { me.maximum(2048).1 };
    Ok(1e-3 / scale)
}

struct Flow<'a> {
    me: &'a MatrixElements,
    lo: f64,
    hi: f64,
}

impl Flow<'_> {
    fn inside(&self, l: f64) -> bool {
        let x = l + 0.5;
        x > self.lo && x < self.hi
    }

    /// `(dl/dt, dphi/dt) = (dH/dphi, -dH/dl)` for `H = 2 alpha(l+1/2) cos phi`.
    fn rate(&self, l: f64, phi: f64) -> Option<(f64, f64)> {
        if !self.inside(l) {
            return None;
        }
        let x = l + 0.5;
        let a = self.me.value_unchecked(x);
        let da = self.me.derivative_unchecked(x);
        Some((-2.0 * a * phi.sin(), -2.0 * da * phi.cos()))
    }

    fn energy(&self, l: f64, phi: f64) -> f64 {
        2.0 * self.me.value_unchecked(l + 0.5) * phi.cos()
    }

    fn rk4(&self, l: f64, phi: f64, dt: f64) -> Option<(f64, f64)> {
        let (k1l, k1p) = self.rate(l, phi)?;
        let (k2l, k2p) = self.rate(l + 0.5 * dt * k1l, phi + 0.5 * dt * k1p)?;
        let (k3l, k3p) = self.rate(l + 0.5 * dt * k2l, phi + 0.5 * dt * k2p)?;
        let (k4l, k4p) = self.rate(l + dt * k3l, phi + dt * k3p)?;
        let l_next = l + dt / 6.0 * (k1l + 2.0 * k2l + 2.0 * k3l + k4l);
        let phi_next = phi + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        self.inside(l_next).then_some((l_next, phi_next))
    }
}

/// Fixed-step classical RK4 integration from `start`, recording every
/// `record_every`-th state. Stops early, flagging the trajectory, if a stage
/// would leave the open domain of `alpha(l + 1/2)`.
pub fn integrate(
    j: &QuadrupleJ,
    start: PhasePoint,
    dt: f64,
    n_steps: usize,
    record_every: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    let me = MatrixElements::new(j)?;
    let dom = me.domain();
    let flow = Flow { me: &me, lo: dom.lo, hi: dom.hi };
    if !flow.inside(start.l) {
        return Err(Error::DomainError { x: start.l + 0.5, lo: dom.lo, hi: dom.hi });
    }
    let every = record_every.max(1);

    let mut traj = Trajectory {
        times: vec![0.0],
        l: vec![start.l],
        phi: vec![start.phi],
        h: vec![flow.energy(start.l, start.phi)],
        exited_domain: false,
    };
    let (mut l, mut phi) = (start.l, start.phi);
    for step in 1..=n_steps {
        match flow.rk4(l, phi, dt) {
            Some((ln, pn)) => {
                l = ln;
                phi = reduce_angle(pn);
            }
            None => {
                traj.exited_domain = true;
                break;
            }
        }
        if step % every == 0 || step == n_steps {
            traj.times.push(step as f64 * dt);
            traj.l.push(l);
            traj.phi.push(phi);
            traj.h.push(flow.energy(l, phi));
        }
    }
    Ok(traj)
}

/// Like [`integrate`] recording every step, but leaving the domain is an
/// error carrying the last valid state.
pub fn integrate_trajectory(j: &QuadrupleJ, start: PhasePoint, dt: f64, n_steps: usize) -> Result<Trajectory> {
    let traj = integrate(j, start, dt, n_steps, 1)?;
    if traj.exited_domain {
        return Err(Error::StepOutOfDomain {
            steps: traj.len() - 1,
            l: *traj.l.last().expect("start recorded"),
            phi: *traj.phi.last().expect("start recorded"),
        });
    }
    Ok(traj)
}
