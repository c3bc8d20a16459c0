//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).
//!
//! Eigenvectors are accumulated from the identity, so the columns come out
//! orthonormal to working precision regardless of eigenvalue spacing.

use crate::ddouble::DD;
use crate::error::{Error, Result};

/// Eigenvalues sorted ascending with matching unit eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[n]` is the column belonging to `eigenvalues[n]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, k| m.max(k.abs()))
    }
}

/// Number of eigenvalues strictly below `x` for the tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off` (Sturm sequence via LDLᵀ pivots).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = if i == 0 { diag[0] - x } else { diag[i] - x - coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Full eigendecomposition of a symmetric tridiagonal matrix.
///
/// `max_sweeps` caps the total number of QL sweeps over all eigenvalues.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64], max_sweeps: usize) -> Result<EigenSystem> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1), "off-diagonal must have n - 1 entries");
    if n == 0 {
        return Ok(EigenSystem { eigenvalues: vec![], eigenvectors: vec![] });
    }

    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    // z[row * n + col], columns become eigenvectors
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let mut sweeps = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::ConvergenceFailure { index: l });
                }

                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));

    let eigenvalues = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| {
            let mut v: Vec<f64> = (0..n).map(|row| z[row * n + col]).collect();
            fix_sign(&mut v);
            v
        })
        .collect();
    Ok(EigenSystem { eigenvalues, eigenvectors })
}

/// Refines every eigenpair by Rayleigh-quotient iteration carried out in
/// double-double arithmetic, then rounds back to `f64`.
///
/// QL leaves every component with an absolute error near `1e-16`; after
/// polishing, small components in the decaying tails are accurate relative
/// to their own size. A pair is left untouched if the refinement moves the
/// eigenvalue or the direction by more than rounding-level amounts.
pub fn polish(diag: &[f64], off: &[f64], sys: &mut EigenSystem, iterations: usize) {
    let n = diag.len();
    if n < 2 {
        return;
    }
    let scale = diag
        .iter()
        .chain(off)
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for (k, v) in sys.eigenvalues.iter_mut().zip(sys.eigenvectors.iter_mut()) {
        let mut kd = DD::new(*k);
        let mut w: Vec<DD> = v.iter().map(|&x| DD::new(x)).collect();
        for _ in 0..iterations {
            let Some(next) = shifted_solve(diag, off, kd, &w, scale) else { break };
            w = normalize(next);
            kd = rayleigh(diag, off, &w);
        }
        let candidate: Vec<f64> = w.iter().map(|x| x.to_f64()).collect();
        let overlap: f64 = candidate.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        let moved = (kd.to_f64() - *k).abs();
        if !(overlap.abs() > 1.0 - 1e-10 && moved <= 1e-10 * scale) {
            continue;
        }
        *k = kd.to_f64();
        let sign = overlap.signum();
        for (dst, src) in v.iter_mut().zip(candidate) {
            *dst = sign * src;
        }
        fix_sign(v);
    }
}

fn normalize(w: Vec<DD>) -> Vec<DD> {
    let norm = w.iter().fold(DD::ZERO, |acc, &x| acc + x * x).sqrt();
    w.into_iter().map(|x| x / norm).collect()
}

fn rayleigh(diag: &[f64], off: &[f64], w: &[DD]) -> DD {
    let n = diag.len();
    let mut acc = DD::ZERO;
    for i in 0..n {
        let mut tw = w[i] * diag[i];
        if i > 0 {
            tw = tw + w[i - 1] * off[i - 1];
        }
        if i + 1 < n {
            tw = tw + w[i + 1] * off[i];
        }
        acc = acc + w[i] * tw;
    }
    acc
}

/// Solves `(T - k) x = b` by Gaussian elimination with partial pivoting.
/// Exactly singular pivots are replaced by a tiny multiple of `scale`.
fn shifted_solve(diag: &[f64], off: &[f64], k: DD, b: &[DD], scale: f64) -> Option<Vec<DD>> {
    let n = diag.len();
    let tiny = DD::new(1e-30 * scale);
    let mut d: Vec<DD> = diag.iter().map(|&x| DD::new(x) - k).collect();
    let mut du: Vec<DD> = off.iter().map(|&x| DD::new(x)).collect();
    let dl: Vec<DD> = du.clone();
    let mut du2 = vec![DD::ZERO; n.saturating_sub(2)];
    let mut b = b.to_vec();
    for i in 0..n - 1 {
        if d[i].abs().hi >= dl[i].abs().hi {
            if d[i].hi == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            d[i + 1] = d[i + 1] - f * du[i];
            b[i + 1] = b[i + 1] - f * b[i];
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            let below = d[i + 1];
            d[i + 1] = du[i] - f * below;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -(f * du[i + 1]);
            }
            du[i] = below;
            b.swap(i, i + 1);
            b[i + 1] = b[i + 1] - f * b[i];
        }
    }
    if d[n - 1].hi == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = vec![DD::ZERO; n];
    for i in (0..n).rev() {
        let mut r = b[i];
        if i + 1 < n {
            r = r - du[i] * x[i + 1];
        }
        if i + 2 < n {
            r = r - du2[i] * x[i + 2];
        }
        x[i] = r / d[i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Makes the first significant component positive.
fn fix_sign(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * norm) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
