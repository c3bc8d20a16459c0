//! Regge symmetry and the `(s, u, v, r)` frame.
//!
//! `R` reflects each entry through the common semiperimeter, `j'_i = s - j_i`.
//! `W` is the tetrahedral-hybrid orthogonal matrix producing `(s, u, v, r)`.
//! Both are symmetric involutions and `W R W = Q = diag(1, -1, -1, -1)`.

use crate::error::Result;
use crate::quadruple::{validate, QuadrupleJ};
use crate::HalfInt;

/// `2R`, with `R` mapping `j` to its Regge conjugate.
pub const REGGE_TWICE: [[i64; 4]; 4] = [
    [-1, 1, 1, 1],
    [1, -1, 1, 1],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
];

/// `2W`, rows producing `s, u, v, r` in that order.
pub const HYBRID_TWICE: [[i64; 4]; 4] = [
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, -1, 1],
    [1, -1, 1, -1],
];

pub const QUATERNION_CONJUGATION: [[i64; 4]; 4] = [
    [1, 0, 0, 0],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
];

pub(crate) fn regge_conjugate_unchecked(j: &QuadrupleJ) -> QuadrupleJ {
    let twice_sum: i64 = j.j.iter().map(|h| h.twice()).sum();
    // 2s = twice_sum / 2; on odd sums the caller rejects the quadruple anyway.
    let twice_s = twice_sum.div_euclid(2);
    QuadrupleJ {
        j: j.j.map(|h| HalfInt::from_twice(twice_s - h.twice())),
    }
}

/// `j'_i = s - j_i`.
pub fn regge_conjugate(j: &QuadrupleJ) -> Result<QuadrupleJ> {
    validate(j)?;
    Ok(regge_conjugate_unchecked(j))
}

/// Semiperimeter and signed half-differences of a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReggeFrame {
    pub s: HalfInt,
    pub u: HalfInt,
    pub v: HalfInt,
    pub r: HalfInt,
}

impl ReggeFrame {
    /// `r = 0`, i.e. `j1 + j3 = j2 + j4`.
    pub fn tangential(&self) -> bool {
        self.r == HalfInt::ZERO
    }

    /// `u = 0`, i.e. `j1 + j2 = j3 + j4`.
    pub fn ex_tangential_u(&self) -> bool {
        self.u == HalfInt::ZERO
    }

    /// `v = 0`, i.e. `j1 + j4 = j2 + j3`.
    pub fn ex_tangential_v(&self) -> bool {
        self.v == HalfInt::ZERO
    }

    /// A quadruple coincides with its Regge conjugate exactly when one of
    /// `u, v, r` vanishes up to relabeling; here: any flag set.
    pub fn self_conjugate_class(&self) -> bool {
        self.tangential() || self.ex_tangential_u() || self.ex_tangential_v()
    }

    /// Inverse transform back to `(j1, j2, j3, j4)`.
    pub fn to_quadruple(&self) -> QuadrupleJ {
        let [j1, j2, j3, j4] = apply_hybrid([self.s, self.u, self.v, self.r]);
        QuadrupleJ::new(j1, j2, j3, j4)
    }
}

/// Applies `W` to four half-integers; exact because the inputs of the
/// frame transform always have even signed row sums.
fn apply_hybrid(x: [HalfInt; 4]) -> [HalfInt; 4] {
    HYBRID_TWICE.map(|row| {
        let twice_sum: i64 = row.iter().zip(&x).map(|(w, h)| w * h.twice()).sum();
        HalfInt::from_twice(twice_sum / 2)
    })
}

pub fn regge_frame(j: &QuadrupleJ) -> Result<ReggeFrame> {
    validate(j)?;
    let [s, u, v, r] = apply_hybrid(j.j);
    Ok(ReggeFrame { s, u, v, r })
}

/// Outcome of the exact symmetry-algebra check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuaternionReport {
    pub wrw_equals_q: bool,
    pub w_involution: bool,
    pub r_involution: bool,
}

impl QuaternionReport {
    pub fn all_hold(&self) -> bool {
        self.wrw_equals_q && self.w_involution && self.r_involution
    }
}

type Mat4 = [[i64; 4]; 4];

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|k| (0..4).map(|m| a[i][m] * b[m][k]).sum()))
}

fn scaled(m: &Mat4, factor: i64) -> Mat4 {
    m.map(|row| row.map(|x| x * factor))
}

pub fn mat_vec(m: &Mat4, x: &[i64; 4]) -> [i64; 4] {
    std::array::from_fn(|i| (0..4).map(|k| m[i][k] * x[k]).sum())
}

/// Verifies `W R W = Q`, `W² = I`, `R² = I` in integer arithmetic over the
/// doubled matrices (`(2W)(2R)(2W) = 8Q`, `(2W)² = (2R)² = 4I`), and
/// columnwise on the basis quadruples.
pub fn quaternion_identity_check() -> QuaternionReport {
    let identity: Mat4 = std::array::from_fn(|i| std::array::from_fn(|k| i64::from(i == k)));
    let wrw = mat_mul(&mat_mul(&HYBRID_TWICE, &REGGE_TWICE), &HYBRID_TWICE);
    let basis_ok = (0..4).all(|c| {
        let e: [i64; 4] = std::array::from_fn(|i| i64::from(i == c));
        let lhs = mat_vec(&HYBRID_TWICE, &mat_vec(&REGGE_TWICE, &mat_vec(&HYBRID_TWICE, &e)));
        lhs == mat_vec(&scaled(&QUATERNION_CONJUGATION, 8), &e)
    });
    QuaternionReport {
        wrw_equals_q: basis_ok && wrw == scaled(&QUATERNION_CONJUGATION, 8),
        w_involution: mat_mul(&HYBRID_TWICE, &HYBRID_TWICE) == scaled(&identity, 4),
        r_involution: mat_mul(&REGGE_TWICE, &REGGE_TWICE) == scaled(&identity, 4),
    }
}
