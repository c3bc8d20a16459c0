//! Equivalence with the imaginary antisymmetric form of the volume operator.
//!
//! The real eigenvectors `Phi` map to `Psi_i = (-i)^i Phi_i`, a unitary
//! diagonal conjugation. Under it the real matrix becomes `K` with
//! `K[i][i+1] = i alpha` and `K[i+1][i] = -i alpha`, purely imaginary,
//! antisymmetric and Hermitian, with the same eigenvalue `k` for `Psi` as for
//! `Phi`.

use num_complex::Complex64;

use super::{EigenSystem, TridiagonalHamiltonian};

#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetricReport {
    /// `max` over eigenpairs of `‖K Psi - k Psi‖∞`.
    pub max_residual: f64,
    /// `max |U† K U - H|` entrywise, with `U = diag((-i)^i)`.
    pub conjugation_defect: f64,
    pub hermitian: bool,
}

/// `(-i)^n`.
fn phase(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Dense `K`, row-major.
pub fn antisymmetric_matrix(h: &TridiagonalHamiltonian) -> Vec<Vec<Complex64>> {
    let n = h.dim();
    let mut k = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, &a) in h.offdiag.iter().enumerate() {
        k[i][i + 1] = Complex64::new(0.0, a);
        k[i + 1][i] = Complex64::new(0.0, -a);
    }
    k
}

/// Maps a real eigenvector to the complex representation.
pub fn phase_map(phi: &[f64]) -> Vec<Complex64> {
    phi.iter().enumerate().map(|(i, &x)| phase(i) * x).collect()
}

#[allow(clippy::needless_range_loop)]
pub fn antisymmetric_representation(h: &TridiagonalHamiltonian, e: &EigenSystem) -> AntisymmetricReport {
    let n = h.dim();
    let k_mat = antisymmetric_matrix(h);

    let max_residual = e
        .eigenvalues
        .iter()
        .zip(&e.eigenvectors)
        .map(|(&k, phi)| {
            let psi = phase_map(phi);
            (0..n)
                .map(|row| {
                    let kpsi: Complex64 = (0..n).map(|c| k_mat[row][c] * psi[c]).sum();
                    (kpsi - psi[row] * k).norm()
                })
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);

    let mut conjugation_defect: f64 = 0.0;
    let mut hermitian = true;
    for r in 0..n {
        for c in 0..n {
            let real = if c + 1 == r {
                h.offdiag[c]
            } else if r + 1 == c {
                h.offdiag[r]
            } else {
                0.0
            };
            let conj = phase(r).conj() * k_mat[r][c] * phase(c);
            conjugation_defect = conjugation_defect.max((conj - real).norm());
            hermitian &= k_mat[r][c] == k_mat[c][r].conj();
        }
    }

    AntisymmetricReport { max_residual, conjugation_defect, hermitian }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadruple::QuadrupleJ;
    use crate::spectrum::solve;

    #[test]
    fn one_dimensional() {
        let (h, e) = solve(&QuadrupleJ::from_f64([0.0, 2.0, 3.0, 1.0])).unwrap();
        assert_eq!(antisymmetric_matrix(&h), vec![vec![Complex64::new(0.0, 0.0)]]);
        let rep = antisymmetric_representation(&h, &e);
        assert_eq!(rep.max_residual, 0.0);
    }

    #[test]
    fn two_by_two_explicit() {
        let (h, e) = solve(&QuadrupleJ::from_f64([0.5; 4])).unwrap();
        let psi = phase_map(&e.eigenvectors[1]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi[0] - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((psi[1] - Complex64::new(0.0, -r)).norm() < 1e-15);
        let rep = antisymmetric_representation(&h, &e);
        assert!(rep.max_residual <= 1e-14);
        assert!(rep.hermitian);
        assert_eq!(rep.conjugation_defect, 0.0);
    }

    #[test]
    fn figure_three_left() {
        let (h, e) = solve(&QuadrupleJ::from_f64([8.5, 10.5, 13.5, 14.5])).unwrap();
        let rep = antisymmetric_representation(&h, &e);
        assert!(rep.max_residual <= 1e-12 * h.dim() as f64 * h.max_offdiag());
    }
}
