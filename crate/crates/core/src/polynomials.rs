//! Discrete orthogonal polynomials carried by the eigenfunctions.
//!
//! Eliminating the square roots from the three-term recursion gives an
//! unsymmetrical recursion with polynomial coefficients in the Regge frame
//! `(s, u, r, v)`. Its solution `p(l)`, started from `p(l_min) = 1` and a
//! vanishing virtual value below the grid, is a polynomial in `k` of degree
//! `l - l_min` and is proportional to the eigenvector component `Phi(l)`
//! through a `k`-independent factor `N(l)`.
//!
//! Two recursions are available:
//!
//! * [`Convention::AsPrinted`]:
//!   `(2l+1) F²(s,u,l-1) p(l-1) + (2l-1) F²(r,v,l+1) p(l+1) = k (4l²-1) p(l)`
//! * [`Convention::Consistent`]:
//!   `F²(s+1,u,l) p(l-1) + F²(r,v,l+1) p(l+1) = k (2l+1) p(l)`
//!
//! The second follows from the exact identity
//! `256 F²(l,J1,J2) F²(l,J3,J4) = 16 F²(s+1,u,l) 16 F²(r,v,l)` and reproduces
//! the eigenvectors; the first is kept for comparison and its consistency
//! verdict is reported rather than assumed.

use crate::alpha::MatrixElements;
use crate::ddouble::DD;
use crate::error::{Error, Result};
use crate::heron::heron_squared;
use crate::quadruple::{LGrid, QuadrupleJ};
use crate::regge::{regge_frame, ReggeFrame};
use crate::spectrum::{solve, EigenSystem};
use crate::HalfInt;

/// Components below this magnitude (eigenvectors are unit vectors) are left
/// out of the `k`-independence check.
pub const COMPONENT_FLOOR: f64 = 1e-10;
pub const NORM_SPREAD_TOL: f64 = 1e-8;
pub const SECULAR_TOL: f64 = 1e-8;
pub const GRAM_TOL: f64 = 1e-9;

/// Steps between overflow checks in the forward recursion.
const RESCALE_EVERY: usize = 32;
const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BELOW: f64 = 1e-150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    AsPrinted,
    #[default]
    Consistent,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::AsPrinted => "as-printed",
            Convention::Consistent => "consistent",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "as-printed" | "asprinted" | "printed" => Ok(Convention::AsPrinted),
            "consistent" => Ok(Convention::Consistent),
            other => Err(format!("unknown convention '{other}' (expected as-printed or consistent)")),
        }
    }
}

/// Coefficients of one recursion step
/// `lower p(i-1) + upper p(i+1) = k diagonal p(i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepCoefficients {
    pub lower: f64,
    pub upper: f64,
    pub diagonal: f64,
}

fn f2(a: HalfInt, b: HalfInt, c: HalfInt) -> i128 {
    heron_squared(a, b, c).quartic()
}

/// Exact integer numerator over 256 converted once to floating point.
fn over_256(numerator: i128) -> f64 {
    numerator as f64 / 256.0
}

pub fn recursion_coefficients(j: &QuadrupleJ, convention: Convention) -> Result<Vec<StepCoefficients>> {
    let grid = j.grid()?;
    let ReggeFrame { s, u, v, r } = regge_frame(j)?;
    let one = HalfInt::ONE;
    Ok(grid
        .iter()
        .map(|l| {
            let t = l.twice() as i128;
            match convention {
                Convention::Consistent => StepCoefficients {
                    lower: over_256(f2(s + one, u, l)),
                    upper: over_256(f2(r, v, l + one)),
                    diagonal: (t + 1) as f64,
                },
                Convention::AsPrinted => StepCoefficients {
                    lower: over_256((t + 1) * f2(s, u, l - one)),
                    upper: over_256((t - 1) * f2(r, v, l + one)),
                    diagonal: (t * t - 1) as f64,
                },
            }
        })
        .collect())
}

/// Polynomial values on the grid, stored with a common scale:
/// `p(l_min + i) = values[i] * exp(log_scale)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialValues {
    pub values: Vec<f64>,
    pub log_scale: f64,
    /// The virtual value one step beyond the grid, on the same scale;
    /// `None` when the last step's upper coefficient vanishes.
    pub secular: Option<f64>,
}

impl PolynomialValues {
    /// `p_i / p_0`, scale-free.
    pub fn normalized(&self, i: usize) -> f64 {
        self.values[i] / self.values[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `|p_dim| / max_i |p_i|`.
    pub fn secular_defect(&self) -> Option<f64> {
        self.secular.map(|s| s.abs() / self.max_abs())
    }
}

/// Recursion state in extended precision, before rounding.
struct RawValues {
    values: Vec<DD>,
    log_scale: f64,
    secular: Option<DD>,
}

impl RawValues {
    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.hi.abs()))
    }

    /// `p_dim / max_i |p_i|`, signed.
    fn secular_ratio(&self) -> Option<DD> {
        let m = self.max_abs();
        self.secular.map(|s| s / m)
    }

    fn round(self) -> PolynomialValues {
        PolynomialValues {
            values: self.values.iter().map(|x| x.to_f64()).collect(),
            log_scale: self.log_scale,
            secular: self.secular.map(DD::to_f64),
        }
    }
}

fn recurse(coeffs: &[StepCoefficients], k: DD) -> Result<RawValues> {
    let n = coeffs.len();
    let mut values = Vec::with_capacity(n);
    values.push(DD::ONE);
    let mut log_scale = 0.0;
    let mut secular = None;
    let mut prev = DD::ZERO;
    for (step, c) in coeffs.iter().enumerate() {
        let cur = values[step];
        let rhs = k * cur * c.diagonal - prev * c.lower;
        if c.upper == 0.0 {
            if step + 1 < n {
                return Err(Error::CoefficientVanishes { step });
            }
            break;
        }
        let next = rhs / c.upper;
        if step + 1 < n {
            values.push(next);
        } else {
            secular = Some(next);
        }
        prev = cur;

        if (step + 1) % RESCALE_EVERY == 0 {
            let m = values.iter().fold(0.0f64, |m, x| m.max(x.hi.abs()));
            if m > RESCALE_ABOVE || (m > 0.0 && m < RESCALE_BELOW) {
                values.iter_mut().for_each(|x| *x = *x / m);
                prev = prev / m;
                secular = secular.map(|s| s / m);
                log_scale += m.ln();
            }
        }
    }
    Ok(RawValues { values, log_scale, secular })
}

/// Runs the recursion forward from `p(-1) = 0`, `p(0) = 1`.
///
/// The arithmetic is carried in double-double precision and rounded at the
/// end; the coefficients are exact in `f64`.
pub fn run_recursion(coeffs: &[StepCoefficients], k: f64) -> Result<PolynomialValues> {
    Ok(recurse(coeffs, DD::new(k))?.round())
}

/// Polishes an eigenvalue `k` (from a spectrum of magnitude `scale`) on the
/// secular function `p_dim(k) / max |p|` by secant steps in double-double
/// precision. Falls back to `k` if the iteration wanders off.
fn refine_on_secular(coeffs: &[StepCoefficients], k: f64, scale: f64) -> Result<DD> {
    let g = |x: DD| -> Result<Option<DD>> { Ok(recurse(coeffs, x)?.secular_ratio()) };
    let mut k0 = DD::new(k);
    let Some(mut g0) = g(k0)? else { return Ok(k0) };
    if g0.hi == 0.0 {
        return Ok(k0);
    }
    let mut k1 = DD::new(k + 1e-9 * scale.max(f64::MIN_POSITIVE));
    let Some(mut g1) = g(k1)? else { return Ok(k0) };
    for _ in 0..12 {
        let dg = g1 - g0;
        if dg.hi == 0.0 || g1.hi == 0.0 {
            break;
        }
        let step = g1 * (k1 - k0) / dg;
        k0 = k1;
        g0 = g1;
        k1 = k1 - step;
        match g(k1)? {
            Some(v) => g1 = v,
            None => return Ok(DD::new(k)),
        }
        if step.abs().hi <= 1e-30 * scale {
            break;
        }
    }
    let moved = (k1 - DD::new(k)).abs().hi;
    Ok(if k1.is_finite() && moved <= 1e-10 * scale { k1 } else { DD::new(k) })
}

pub fn polynomial_values(j: &QuadrupleJ, k: f64, convention: Convention) -> Result<PolynomialValues> {
    run_recursion(&recursion_coefficients(j, convention)?, k)
}

/// Closed-form normalization factors with `N(l_min) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub convention: Convention,
    pub norms: Vec<f64>,
    /// Sign of the radicand behind each step ratio (`+1` at index 0).
    /// For [`Convention::AsPrinted`] the norms carry magnitudes only and this
    /// records the sign that the square roots discarded.
    pub sign_ledger: Vec<i8>,
}

/// Solves the two-term relation for `N` along the grid.
///
/// * Consistent: `N(l) = N(l-1) (2l-1) alpha(l) / F²(r,v,l)`, fully signed.
/// * AsPrinted: `N(l-1) = [F(s,u,l-1) / F(r,v,l)] N(l)`, with `F = sqrt|F²|`.
pub fn normalization_closed_form(j: &QuadrupleJ, convention: Convention) -> Result<Normalization> {
    let me = MatrixElements::new(j)?;
    let grid = *me.grid();
    let ReggeFrame { s, u, v, r } = regge_frame(j)?;
    let mut norms = vec![1.0];
    let mut sign_ledger = vec![1i8];
    for i in 1..grid.dim {
        let l = grid.l_at(i);
        let rv = heron_squared(r, v, l);
        let (ratio, sign) = match convention {
            Convention::Consistent => {
                if rv.is_zero() {
                    return Err(Error::ZeroDivisor { index: i });
                }
                let t = l.twice() as f64;
                let a = me.at_lattice(l)?;
                ((t - 1.0) * a / rv.to_f64(), rv.signum())
            }
            Convention::AsPrinted => {
                let su = heron_squared(s, u, l - HalfInt::ONE);
                if rv.is_zero() {
                    return Err(Error::ZeroDivisor { index: i });
                }
                if su.is_zero() {
                    return Err(Error::ZeroDivisor { index: i - 1 });
                }
                (
                    (rv.to_f64().abs() / su.to_f64().abs()).sqrt(),
                    rv.signum() * su.signum(),
                )
            }
        };
        let next = norms[i - 1] * ratio;
        if !next.is_finite() || next == 0.0 {
            return Err(Error::NormOverflow { index: i });
        }
        norms.push(next);
        sign_ledger.push(sign);
    }
    Ok(Normalization { convention, norms, sign_ledger })
}

/// `N_i = p_i Phi_0 / (p_0 Phi_i)` for one eigenpair, i.e. the ratio after
/// fixing both sequences to the boundary value 1. Entries with
/// `|Phi_i| <= COMPONENT_FLOOR` are `None`.
pub fn empirical_norms(p: &PolynomialValues, phi: &[f64]) -> Vec<Option<f64>> {
    (0..phi.len())
        .map(|i| (phi[i].abs() > COMPONENT_FLOOR).then(|| p.normalized(i) * phi[0] / phi[i]))
        .collect()
}

/// Polynomials evaluated at every eigenvalue, with norms and weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialTable {
    pub grid: LGrid,
    pub convention: Convention,
    pub eigenvalues: Vec<f64>,
    /// Values at each eigenvalue. For the Consistent convention the
    /// eigenvalue is first polished on the secular function, so these are
    /// not the plain [`run_recursion`] output at `eigenvalues[n]`.
    pub polynomials: Vec<PolynomialValues>,
    /// `|p_dim| / max |p|` from the recursion at the unpolished eigenvalues.
    pub secular_defects: Vec<Option<f64>>,
    /// Normalization used for the weights.
    pub norms: Vec<f64>,
    /// `w_i = 1 / N_i²`.
    pub weights: Vec<f64>,
    /// Whether `norms` come from the closed form (otherwise extracted from
    /// the eigenvectors).
    pub closed_form_norms: bool,
}

/// Builds the table at all eigenvalues of `j`.
///
/// The Consistent convention takes its norms from the closed form. The
/// AsPrinted closed form is sign-ambiguous, so there the norms are read off
/// the eigenvectors, at each index from the eigenpair with the largest
/// `|Phi_i|`.
pub fn build_table(j: &QuadrupleJ, convention: Convention) -> Result<PolynomialTable> {
    let (_, eig) = solve(j)?;
    build_table_with(j, convention, &eig)
}

pub fn build_table_with(j: &QuadrupleJ, convention: Convention, eig: &EigenSystem) -> Result<PolynomialTable> {
    let grid = j.grid()?;
    let coeffs = recursion_coefficients(j, convention)?;
    let scale = eig.max_abs_eigenvalue();
    let mut polynomials = Vec::with_capacity(eig.dim());
    let mut secular_defects = Vec::with_capacity(eig.dim());
    for &k in &eig.eigenvalues {
        let plain = run_recursion(&coeffs, k)?;
        secular_defects.push(plain.secular_defect());
        polynomials.push(match convention {
            Convention::Consistent => recurse(&coeffs, refine_on_secular(&coeffs, k, scale)?)?.round(),
            Convention::AsPrinted => plain,
        });
    }

    let (norms, closed_form_norms) = match convention {
        Convention::Consistent => (normalization_closed_form(j, convention)?.norms, true),
        Convention::AsPrinted => {
            let norms = (0..grid.dim)
                .map(|i| {
                    let best = (0..eig.dim())
                        .max_by(|&a, &b| {
                            eig.eigenvectors[a][i].abs().total_cmp(&eig.eigenvectors[b][i].abs())
                        })
                        .expect("non-empty spectrum");
                    let phi = &eig.eigenvectors[best];
                    polynomials[best].normalized(i) * phi[0] / phi[i]
                })
                .collect();
            (norms, false)
        }
    };
    let weights = norms.iter().map(|n| 1.0 / (n * n)).collect();
    Ok(PolynomialTable {
        grid,
        convention,
        eigenvalues: eig.eigenvalues.clone(),
        polynomials,
        secular_defects,
        norms,
        weights,
        closed_form_norms,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    /// `max_{k != k'} |G_kk'| / sqrt(G_kk G_k'k')`.
    pub max_offdiag: f64,
}

/// Weighted Gram matrix `G_kk' = Σ_i w_i p(k)_i p(k')_i` over the table.
///
/// Each term is formed as `(p(k)_i / N_i) (p(k')_i / N_i)`, which equals
/// `w_i p(k)_i p(k')_i` but stays in range when `N` spans hundreds of
/// decades.
pub fn orthogonality_report(t: &PolynomialTable) -> OrthogonalityReport {
    let n = t.eigenvalues.len();
    // Normalizing each polynomial by p_0 keeps the common scale out of G.
    let rows: Vec<Vec<f64>> = t
        .polynomials
        .iter()
        .map(|p| (0..t.grid.dim).map(|i| p.normalized(i) / t.norms[i]).collect())
        .collect();
    let gram = |a: usize, b: usize| -> f64 { (0..t.grid.dim).map(|i| rows[a][i] * rows[b][i]).sum() };
    let diag: Vec<f64> = (0..n).map(|a| gram(a, a)).collect();
    let mut max_offdiag: f64 = 0.0;
    for a in 0..n {
        for b in (a + 1)..n {
            max_offdiag = max_offdiag.max(gram(a, b).abs() / (diag[a] * diag[b]).sqrt());
        }
    }
    OrthogonalityReport { max_offdiag }
}

/// Verdict of the cross-validation between the polynomial recursion and
/// the eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct HarnessReport {
    pub convention: Convention,
    /// `max_i (max_k N - min_k N) / max_k |N|` over significant components.
    pub norm_spread: f64,
    /// `max_i |N_emp - N_closed| / |N_closed|` (Consistent convention only).
    pub closed_form_deviation: Option<f64>,
    /// `max_k |p_dim| / max_i |p_i|`; `None` if undefined for some `k`.
    pub secular_defect: Option<f64>,
    pub gram_offdiag: f64,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.norm_spread <= NORM_SPREAD_TOL
            && self.secular_defect.is_some_and(|d| d <= SECULAR_TOL)
            && self.gram_offdiag <= GRAM_TOL
            && self.closed_form_deviation.is_none_or(|d| d <= NORM_SPREAD_TOL)
    }
}

pub fn consistency_harness(j: &QuadrupleJ, convention: Convention) -> Result<HarnessReport> {
    let (_, eig) = solve(j)?;
    let table = build_table_with(j, convention, &eig)?;
    Ok(harness_from_table(&table, &eig))
}

pub fn harness_from_table(table: &PolynomialTable, eig: &EigenSystem) -> HarnessReport {
    let dim = table.grid.dim;
    let per_k: Vec<Vec<Option<f64>>> = table
        .polynomials
        .iter()
        .zip(&eig.eigenvectors)
        .map(|(p, phi)| empirical_norms(p, phi))
        .collect();

    let mut norm_spread: f64 = 0.0;
    let mut closed_dev: f64 = 0.0;
    for i in 0..dim {
        let vals: Vec<f64> = per_k.iter().filter_map(|row| row[i]).collect();
        if vals.is_empty() {
            continue;
        }
        let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let scale = vals.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        norm_spread = norm_spread.max((max - min) / scale);
        if table.closed_form_norms {
            let reference = table.norms[i];
            for v in &vals {
                closed_dev = closed_dev.max((v - reference).abs() / reference.abs());
            }
        }
    }

    let secular_defect = table
        .secular_defects
        .iter()
        .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)));

    HarnessReport {
        convention: table.convention,
        norm_spread: if norm_spread.is_nan() { f64::INFINITY } else { norm_spread },
        closed_form_deviation: table.closed_form_norms.then_some(closed_dev),
        secular_defect,
        gram_offdiag: orthogonality_report(table).max_offdiag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regge::regge_conjugate;
    use approx::assert_relative_eq;

    fn q(v: [f64; 4]) -> QuadrupleJ {
        QuadrupleJ::from_f64(v)
    }

    #[test]
    fn as_printed_hand_evaluation() {
        // F²(0,0,1) = -1/16, F²(2,0,0) = -1, F²(0,0,2) = -1
        let p = polynomial_values(&q([1.0; 4]), 0.0, Convention::AsPrinted).unwrap();
        assert_eq!(p.values, vec![1.0, 0.0, -3.0]);
        assert_eq!(p.log_scale, 0.0);
    }

    #[test]
    fn consistent_tracks_eigenvector() {
        let j = q([1.0; 4]);
        let (_, eig) = solve(&j).unwrap();
        let k = eig.eigenvalues[2];
        assert_relative_eq!(k, 3f64.sqrt() / 4.0, max_relative = 1e-14);
        let p = polynomial_values(&j, k, Convention::Consistent).unwrap();
        let norms = normalization_closed_form(&j, Convention::Consistent).unwrap().norms;
        let phi = &eig.eigenvectors[2];
        for i in 0..3 {
            assert_relative_eq!(p.values[i] / norms[i], phi[i] / phi[0], max_relative = 1e-13);
        }
    }

    #[test]
    fn boundary_condition() {
        for &k in &[-3.0, 0.0, 0.7, 12.5] {
            let p = polynomial_values(&q([8.5, 10.5, 13.5, 14.5]), k, Convention::Consistent).unwrap();
            assert_eq!(p.values[0], 1.0);
        }
    }

    #[test]
    fn one_dimensional_norms() {
        let n = normalization_closed_form(&q([0.0, 2.0, 3.0, 1.0]), Convention::Consistent).unwrap();
        assert_eq!(n.norms, vec![1.0]);
        let t = build_table(&q([0.0, 2.0, 3.0, 1.0]), Convention::Consistent).unwrap();
        assert_eq!(orthogonality_report(&t).max_offdiag, 0.0);
    }

    #[test]
    fn smallest_case_ratio_magnitude() {
        // (s,u,r,v) = (1,0,0,0): |N0/N1| = |F(s,u,0)| / |F(r,v,1)| for the
        // literal two-term relation; F²(1,0,0) = -1/16 and F²(0,0,1) = -1/16.
        let j = q([0.5; 4]);
        let n = normalization_closed_form(&j, Convention::AsPrinted).unwrap();
        assert_relative_eq!(n.norms[0] / n.norms[1], 1.0, max_relative = 1e-15);
        assert_eq!(n.sign_ledger, vec![1, 1]);

        // Consistent: N1/N0 = (2l-1) alpha(l) / F²(r,v,l) at l = 1.
        let n = normalization_closed_form(&j, Convention::Consistent).unwrap();
        assert_relative_eq!(n.norms[1], -(3f64.sqrt() / 16.0) * 16.0, max_relative = 1e-15);
        assert_eq!(n.sign_ledger, vec![1, -1]);
    }

    #[test]
    fn small_orthogonality() {
        let t = build_table(&q([0.5; 4]), Convention::Consistent).unwrap();
        assert!(orthogonality_report(&t).max_offdiag <= 1e-12);
    }

    #[test]
    fn harness_on_figure_three_left() {
        let j = q([8.5, 10.5, 13.5, 14.5]);
        let rep = consistency_harness(&j, Convention::Consistent).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let t = build_table(&j, Convention::Consistent).unwrap();
        assert!(orthogonality_report(&t).max_offdiag <= 1e-9);
    }

    #[test]
    fn regge_invariance_is_exact() {
        let j = q([8.5, 10.5, 13.5, 14.5]);
        let c = regge_conjugate(&j).unwrap();
        for conv in [Convention::Consistent, Convention::AsPrinted] {
            for &k in &[0.0, 1.3, -7.25] {
                assert_eq!(polynomial_values(&j, k, conv), polynomial_values(&c, k, conv));
            }
        }
    }

    #[test]
    fn vanishing_coefficient_is_reported() {
        // l_min = 1/2: the as-printed upper coefficient carries (2l - 1) = 0.
        let err = polynomial_values(&q([1.0, 0.5, 1.0, 0.5]), 1.0, Convention::AsPrinted).unwrap_err();
        assert_eq!(err, Error::CoefficientVanishes { step: 0 });
    }

    #[test]
    fn rescaling_keeps_ratios() {
        let coeffs = vec![StepCoefficients { lower: 1e-4, upper: 1e-4, diagonal: 1.0 }; 80];
        let p = run_recursion(&coeffs, 1.0).unwrap();
        assert!(p.log_scale > 0.0);
        assert!(p.values.iter().all(|v| v.is_finite()));
        // the first steps grow by 1e4 each; 1e256 after 64 steps forces a rescale
        assert_relative_eq!(p.normalized(1), 1e4, max_relative = 1e-12);
    }

    #[test]
    fn convention_parsing() {
        assert_eq!("consistent".parse::<Convention>().unwrap(), Convention::Consistent);
        assert_eq!("as-printed".parse::<Convention>().unwrap(), Convention::AsPrinted);
        assert!("other".parse::<Convention>().is_err());
    }
}
