use crate::alpha::MatrixElements;
use crate::error::{Error, Result};
use crate::heron::heron_quartic_f64;
use crate::quadruple::QuadrupleJ;

use super::PhasePoint;

fn sides_f64(j: &QuadrupleJ) -> [f64; 4] {
    j.sides().map(|s| s.to_f64())
}

/// Range of hinge lengths for which both triangles are non-degenerate.
fn hinge_range(s: &[f64; 4]) -> (f64, f64) {
    let lo = (s[0] - s[1]).abs().max((s[2] - s[3]).abs());
    let hi = (s[0] + s[1]).min(s[2] + s[3]);
    (lo, hi)
}

fn triangle_areas(j: &QuadrupleJ, x: f64) -> Result<(f64, f64)> {
    let s = sides_f64(j);
    let q1 = heron_quartic_f64(x, s[0], s[1]);
    let q2 = heron_quartic_f64(x, s[2], s[3]);
    if !(x > 0.0 && q1 > 0.0 && q2 > 0.0) {
        let (lo, hi) = hinge_range(&s);
        return Err(Error::DomainError { x, lo, hi });
    }
    Ok((q1.sqrt() / 4.0, q2.sqrt() / 4.0))
}

/// Signed volume of the tetrahedron with edges `j1+1/2, j2+1/2` and
/// `j3+1/2, j4+1/2` on the two faces sharing the hinge of length `p.l`,
/// opened to dihedral angle `pi/2 + phi`:
///
/// ```text
/// V = 2 A1 A2 sin(theta) / (3 x)
/// ```
pub fn tetrahedron_volume(j: &QuadrupleJ, p: PhasePoint) -> Result<f64> {
    let x = p.l;
    let (a1, a2) = triangle_areas(j, x)?;
    Ok(2.0 * a1 * a2 * p.dihedral().sin() / (3.0 * x))
}

/// The same volume from an explicit embedding: hinge on the first axis, the
/// two apexes placed by their distances to the hinge ends, the second rotated
/// by the dihedral angle, then `288 V² = det(CM)` of the 5x5 Cayley–Menger
/// matrix. The sign is that of `sin(theta)`.
pub fn cayley_menger_volume(j: &QuadrupleJ, p: PhasePoint) -> Result<f64> {
    let x = p.l;
    triangle_areas(j, x)?;
    let s = sides_f64(j);
    let theta = p.dihedral();

    let apex = |b: f64, c: f64| {
        let along = (x * x + b * b - c * c) / (2.0 * x);
        (along, (b * b - along * along).max(0.0).sqrt())
    };
    let (a1, h1) = apex(s[0], s[1]);
    let (a2, h2) = apex(s[2], s[3]);
    let pts = [
        [0.0, 0.0, 0.0],
        [x, 0.0, 0.0],
        [a1, h1, 0.0],
        [a2, h2 * theta.cos(), h2 * theta.sin()],
    ];

    let mut cm = [[0.0f64; 5]; 5];
    for i in 0..4 {
        cm[0][i + 1] = 1.0;
        cm[i + 1][0] = 1.0;
        for k in 0..4 {
            let d2: f64 = (0..3).map(|c| (pts[i][c] - pts[k][c]).powi(2)).sum();
            cm[i + 1][k + 1] = d2;
        }
    }
    let v2 = (determinant(cm) / 288.0).max(0.0);
    Ok(v2.sqrt().copysign(theta.sin()))
}

/// `H sqrt(4x² - 1) / (3x)` with `H = 2 alpha(x) cos(phi)`, where `alpha` is
/// evaluated at the hinge length itself.
pub fn volume_from_hamiltonian(j: &QuadrupleJ, x: f64, phi: f64) -> Result<f64> {
    let me = MatrixElements::new(j)?;
    let h = 2.0 * me.value(x)? * phi.cos();
    Ok(h * (4.0 * x * x - 1.0).sqrt() / (3.0 * x))
}

fn determinant<const N: usize>(mut a: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .expect("non-empty range");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    det
}
