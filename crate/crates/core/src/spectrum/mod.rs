//! The volume operator as a real symmetric tridiagonal Hamiltonian on the
//! diagonal grid, its eigensystem, and the representation-level symmetry
//! checks.
//!
//! The eigenproblem is the three-term recursion
//!
//! ```text
//! alpha(l+1) Phi(l+1) + alpha(l) Phi(l-1) = k Phi(l)
//! ```
//!
//! with zero diagonal. Pairing `k <-> -k` and the alternating-sign relation
//! between paired eigenvectors are not imposed by the solver; they are
//! measured by [`verify_spectral_symmetries`].

mod antisymmetric;
mod eigen;

pub use antisymmetric::{antisymmetric_representation, AntisymmetricReport};
pub use eigen::{polish, sturm_count, tridiagonal_eigen, EigenSystem};

use crate::alpha::MatrixElements;
use crate::error::Result;
use crate::quadruple::{LGrid, QuadrupleJ};

/// Zero-diagonal symmetric tridiagonal matrix; `offdiag[i]` couples grid
/// points `i` and `i + 1` and equals `alpha(l_min + i + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalHamiltonian {
    pub grid: LGrid,
    pub offdiag: Vec<f64>,
}

impl TridiagonalHamiltonian {
    pub fn dim(&self) -> usize {
        self.grid.dim
    }

    pub fn max_offdiag(&self) -> f64 {
        self.offdiag.iter().fold(0.0, |m, &a| m.max(a))
    }

    /// `‖H v - k v‖∞`.
    pub fn residual(&self, k: f64, v: &[f64]) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut hv = 0.0;
                if i > 0 {
                    hv += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    hv += self.offdiag[i] * v[i + 1];
                }
                (hv - k * v[i]).abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn build_hamiltonian(j: &QuadrupleJ) -> Result<TridiagonalHamiltonian> {
    let me = MatrixElements::new(j)?;
    Ok(TridiagonalHamiltonian {
        grid: *me.grid(),
        offdiag: me.offdiagonal(),
    })
}

/// All eigenpairs, eigenvalues ascending, each eigenvector with its first
/// significant component positive. Fails after `100 * dim` QL sweeps.
///
/// The QL result is polished by two Rayleigh-quotient steps in extended
/// precision so that small eigenvector components carry relative accuracy.
pub fn eigensolve(h: &TridiagonalHamiltonian) -> Result<EigenSystem> {
    let n = h.dim();
    let diag = vec![0.0; n];
    let mut sys = tridiagonal_eigen(&diag, &h.offdiag, 100 * n.max(1))?;
    polish(&diag, &h.offdiag, &mut sys, 2);
    Ok(sys)
}

/// `build_hamiltonian` followed by `eigensolve`.
pub fn solve(j: &QuadrupleJ) -> Result<(TridiagonalHamiltonian, EigenSystem)> {
    let h = build_hamiltonian(j)?;
    let e = eigensolve(&h)?;
    Ok((h, e))
}

/// Measured deviations from the `k <-> -k` symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    /// `max_i |k_i + k_{dim-1-i}|`.
    pub pairing_defect: f64,
    /// `max` over pairs of `min_σ ‖Phi(k)_i - σ (-1)^i Phi(-k)_i‖∞`.
    pub parity_defect: f64,
    pub odd_dim: bool,
    /// For odd dimension, the middle eigenvalue (should vanish).
    pub middle_eigenvalue: Option<f64>,
}

impl SymmetryReport {
    /// Whether 0 is an eigenvalue within `tol` (always false for even dim).
    pub fn zero_present(&self, tol: f64) -> bool {
        self.middle_eigenvalue.is_some_and(|k| k.abs() <= tol)
    }
}

pub fn verify_spectral_symmetries(e: &EigenSystem) -> SymmetryReport {
    let n = e.dim();
    let pairing_defect = (0..n)
        .map(|i| (e.eigenvalues[i] + e.eigenvalues[n - 1 - i]).abs())
        .fold(0.0, f64::max);

    let parity_defect = (0..n)
        .map(|a| {
            let plus = &e.eigenvectors[a];
            let minus = &e.eigenvectors[n - 1 - a];
            [1.0, -1.0]
                .iter()
                .map(|&sigma| {
                    (0..n)
                        .map(|i| {
                            let alt = if i % 2 == 0 { 1.0 } else { -1.0 };
                            (plus[i] - sigma * alt * minus[i]).abs()
                        })
                        .fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);

    SymmetryReport {
        pairing_defect,
        parity_defect,
        odd_dim: n % 2 == 1,
        middle_eigenvalue: (n % 2 == 1).then(|| e.eigenvalues[n / 2]),
    }
}
