//! Payload builders, one per subcommand. Each returns the resolved options
//! (echoed into the request block), the JSON payload and the CSV rendering.

use qvolume::alpha::MatrixElements;
use qvolume::polynomials;
use qvolume::quadruple::dimension_from_minimum;
use qvolume::regge::quaternion_identity_check;
use qvolume::semiclassics::{self, PhasePoint, DEFAULT_SCAN};
use qvolume::spectrum::{self, antisymmetric_representation, verify_spectral_symmetries};
use qvolume::{HalfInt, QuadrupleJ};
use serde_json::{json, Map, Value};

use crate::format::{csv_real, half, halves, header, opt_real, real, reals, Csv};
use crate::request::{InputError, Request};
use crate::Failure;

pub const DEFAULT_SAMPLES: usize = 513;
pub const DEFAULT_STEPS: usize = 10_000;
pub const DEFAULT_EVERY: usize = 10;
/// Relative tolerance (against the largest matrix element) for reporting a
/// zero eigenvalue.
pub const ZERO_MODE_TOL: f64 = 1e-12;

pub struct Built {
    pub options: Map<String, Value>,
    pub payload: Value,
    pub csv: String,
}

fn options(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn kv_rows(pairs: &[(&str, String)]) -> Vec<Vec<String>> {
    pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect()
}

fn bool_text(b: bool) -> String {
    b.to_string()
}

pub fn info(j: &QuadrupleJ) -> Result<Built, Failure> {
    let me = MatrixElements::new(j)?;
    let grid = *me.grid();
    let from_min = dimension_from_minimum(j)?;
    let dom = me.domain();
    let quaternion = quaternion_identity_check();
    let payload = json!({
        "dimension": {
            "range_formula": grid.dim,
            "from_minimum": from_min,
            "agree": grid.dim == from_min,
        },
        "sides": halves(&j.sides()),
        "continuous_domain": {
            "lo": real(dom.lo),
            "hi": real(dom.hi),
            "lo_open": dom.lo_open,
        },
        "quaternion_identities": {
            "wrw_equals_q": quaternion.wrw_equals_q,
            "w_squared_identity": quaternion.w_involution,
            "r_squared_identity": quaternion.r_involution,
        },
    });
    let mut csv = Csv::default();
    csv.section(
        &header(&["quantity", "value"]),
        kv_rows(&[
            ("l_min", grid.l_min.to_string()),
            ("l_max", grid.l_max.to_string()),
            ("dim_range_formula", grid.dim.to_string()),
            ("dim_from_minimum", from_min.to_string()),
            ("domain_lo", csv_real(dom.lo)),
            ("domain_hi", csv_real(dom.hi)),
            ("domain_lo_open", bool_text(dom.lo_open)),
        ]),
    );
    Ok(Built { options: Map::new(), payload, csv: csv.finish() })
}

pub fn spectrum(j: &QuadrupleJ, req: &Request) -> Result<Built, Failure> {
    let (h, eig) = spectrum::solve(j)?;
    let dim = h.dim();
    if let Some(k) = req.k_index {
        if k >= dim {
            return Err(InputError::new("invalid_argument", format!("k_index {k} out of range for dim {dim}")).into());
        }
    }
    let sym = verify_spectral_symmetries(&eig);
    let anti = antisymmetric_representation(&h, &eig);
    let max_alpha = h.max_offdiag();
    let selected: Vec<usize> = match req.k_index {
        Some(k) => vec![k],
        None => (0..dim).collect(),
    };

    let mut payload = json!({
        "dim": dim,
        "max_offdiagonal": real(max_alpha),
        "eigenvalues": reals(&eig.eigenvalues),
    });
    let obj = payload.as_object_mut().expect("object");
    if req.eigenvectors {
        let vectors: Vec<Value> = selected
            .iter()
            .map(|&n| json!({ "index": n, "k": real(eig.eigenvalues[n]), "phi": reals(&eig.eigenvectors[n]) }))
            .collect();
        obj.insert("eigenvectors".into(), Value::Array(vectors));
    }
    obj.insert(
        "symmetry".into(),
        json!({
            "pairing_defect": real(sym.pairing_defect),
            "parity_defect": real(sym.parity_defect),
            "odd_dim": sym.odd_dim,
            "middle_eigenvalue": opt_real(sym.middle_eigenvalue),
            "zero_present": sym.zero_present(ZERO_MODE_TOL * max_alpha.max(f64::MIN_POSITIVE)),
        }),
    );
    obj.insert(
        "antisymmetric".into(),
        json!({
            "max_residual": real(anti.max_residual),
            "conjugation_defect": real(anti.conjugation_defect),
            "hermitian": anti.hermitian,
        }),
    );

    let mut csv = Csv::default();
    if req.eigenvectors {
        let mut head = vec!["k".to_string()];
        head.extend((0..dim).map(|i| format!("phi_{i}")));
        let rows = selected.iter().map(|&n| {
            let mut row = vec![csv_real(eig.eigenvalues[n])];
            row.extend(eig.eigenvectors[n].iter().map(|&x| csv_real(x)));
            row
        });
        csv.section(&head, rows);
    } else {
        csv.section(&header(&["k"]), eig.eigenvalues.iter().map(|&k| vec![csv_real(k)]));
    }

    let mut opts = vec![("eigenvectors", Value::Bool(req.eigenvectors))];
    if let Some(k) = req.k_index {
        opts.push(("k_index", json!(k)));
    }
    Ok(Built { options: options(opts), payload, csv: csv.finish() })
}

pub fn caustics(j: &QuadrupleJ, req: &Request) -> Result<Built, Failure> {
    let samples = req.samples.unwrap_or(DEFAULT_SAMPLES);
    let scan = req.scan.unwrap_or(DEFAULT_SCAN);
    let curve = semiclassics::potential_curves(j, samples)?;
    let (x_max, u_max) = semiclassics::caustic_maximum(j, scan)?;
    let (_, eig) = spectrum::solve(j)?;

    let mut overlay = Vec::with_capacity(eig.dim());
    let mut overlay_rows = Vec::with_capacity(eig.dim());
    for &k in &eig.eigenvalues {
        let roots = semiclassics::turning_points(j, k, scan)?;
        let (lo, hi) = (roots[0], roots[roots.len() - 1]);
        overlay.push(json!({ "k": real(k), "turning_points": reals(&roots) }));
        overlay_rows.push(vec![csv_real(k), csv_real(lo), csv_real(hi)]);
    }
    let max_abs_k = eig.max_abs_eigenvalue();
    let brackets = max_abs_k <= u_max + semiclassics::BRACKET_SLACK;

    let payload = json!({
        "samples": curve.samples.iter().map(|s| json!({
            "x": real(s.x),
            "u_plus": real(s.u_plus),
            "u_minus": real(s.u_minus),
        })).collect::<Vec<_>>(),
        "caustic_maximum": { "x": real(x_max), "u_plus": real(u_max) },
        "eigenvalues": overlay,
        "bracketing": {
            "max_abs_eigenvalue": real(max_abs_k),
            "max_u_plus": real(u_max),
            "holds": brackets,
        },
    });

    let mut csv = Csv::default();
    csv.section(
        &header(&["x", "u_plus", "u_minus"]),
        curve.samples.iter().map(|s| vec![csv_real(s.x), csv_real(s.u_plus), csv_real(s.u_minus)]),
    );
    csv.section(&header(&["k", "x_lo", "x_hi"]), overlay_rows);

    Ok(Built {
        options: options(vec![("samples", json!(samples)), ("scan", json!(scan))]),
        payload,
        csv: csv.finish(),
    })
}

pub fn poly(j: &QuadrupleJ, req: &Request) -> Result<Built, Failure> {
    let convention = req.convention()?;
    let (_, eig) = spectrum::solve(j)?;
    let dim = eig.dim();
    if let Some(k) = req.k_index {
        if k >= dim {
            return Err(InputError::new("invalid_argument", format!("k_index {k} out of range for dim {dim}")).into());
        }
    }
    let table = polynomials::build_table_with(j, convention, &eig)?;
    let closed = polynomials::normalization_closed_form(j, convention)?;
    let report = polynomials::harness_from_table(&table, &eig);
    let orth = polynomials::orthogonality_report(&table);
    let selected: Vec<usize> = match req.k_index {
        Some(k) => vec![k],
        None => (0..dim).collect(),
    };
    let values = |n: usize| -> Vec<f64> { (0..dim).map(|i| table.polynomials[n].normalized(i)).collect() };
    let grid_l: Vec<HalfInt> = table.grid.iter().collect();

    let payload = json!({
        "convention": convention.name(),
        "l": halves(&grid_l),
        "eigenvalues": reals(&table.eigenvalues),
        "norms": reals(&table.norms),
        "norms_from_closed_form": table.closed_form_norms,
        "weights": reals(&table.weights),
        "closed_form": {
            "norms": reals(&closed.norms),
            "sign_ledger": closed.sign_ledger,
        },
        "polynomials": selected.iter().map(|&n| json!({
            "index": n,
            "k": real(table.eigenvalues[n]),
            "p": reals(&values(n)),
        })).collect::<Vec<_>>(),
        "orthogonality": { "max_offdiag": real(orth.max_offdiag) },
        "harness": {
            "norm_spread": real(report.norm_spread),
            "closed_form_deviation": opt_real(report.closed_form_deviation),
            "secular_defect": opt_real(report.secular_defect),
            "gram_offdiag": real(report.gram_offdiag),
            "passed": report.passed(),
        },
    });

    let mut csv = Csv::default();
    csv.section(
        &header(&["i", "l", "N", "w"]),
        (0..dim).map(|i| {
            vec![i.to_string(), grid_l[i].to_string(), csv_real(table.norms[i]), csv_real(table.weights[i])]
        }),
    );
    let mut head = vec!["k".to_string()];
    head.extend((0..dim).map(|i| format!("p_{i}")));
    csv.section(
        &head,
        selected.iter().map(|&n| {
            let mut row = vec![csv_real(table.eigenvalues[n])];
            row.extend(values(n).into_iter().map(csv_real));
            row
        }),
    );
    csv.section(
        &header(&["quantity", "value"]),
        kv_rows(&[
            ("norm_spread", csv_real(report.norm_spread)),
            ("closed_form_deviation", report.closed_form_deviation.map_or("".into(), csv_real)),
            ("secular_defect", report.secular_defect.map_or("".into(), csv_real)),
            ("gram_offdiag", csv_real(report.gram_offdiag)),
            ("passed", bool_text(report.passed())),
        ]),
    );

    let mut opts = vec![("convention", json!(convention.name()))];
    if let Some(k) = req.k_index {
        opts.push(("k_index", json!(k)));
    }
    Ok(Built { options: options(opts), payload, csv: csv.finish() })
}

pub fn dynamics(j: &QuadrupleJ, req: &Request) -> Result<Built, Failure> {
    let grid = j.grid()?;
    let l0 = req.l0.unwrap_or(0.5 * (grid.l_min.to_f64() + grid.l_max.to_f64()));
    let phi0 = req.phi0.unwrap_or(0.0);
    let dt = match req.dt {
        Some(dt) => dt,
        None => semiclassics::default_time_step(j)?,
    };
    let steps = req.steps.unwrap_or(DEFAULT_STEPS);
    let every = req.every.unwrap_or(DEFAULT_EVERY);
    if every == 0 {
        return Err(InputError::new("invalid_argument", "every must be at least 1").into());
    }
    let start = PhasePoint::new(l0, phi0);
    let traj = semiclassics::integrate(j, start, dt, steps, every)?;
    if traj.exited_domain {
        return Err(qvolume::Error::StepOutOfDomain {
            steps: ((traj.len() - 1) * every).min(steps),
            l: *traj.l.last().expect("start recorded"),
            phi: *traj.phi.last().expect("start recorded"),
        }
        .into());
    }
    let payload = json!({
        "start": { "l": real(start.l), "phi": real(start.phi) },
        "max_relative_drift": real(traj.max_relative_drift()),
        "max_abs_drift": real(traj.max_abs_drift()),
        "trajectory": {
            "t": reals(&traj.times),
            "l": reals(&traj.l),
            "phi": reals(&traj.phi),
            "H": reals(&traj.h),
        },
    });
    let mut csv = Csv::default();
    csv.section(
        &header(&["t", "l", "phi", "H"]),
        (0..traj.len()).map(|n| vec![csv_real(traj.times[n]), csv_real(traj.l[n]), csv_real(traj.phi[n]), csv_real(traj.h[n])]),
    );
    Ok(Built {
        options: options(vec![
            ("l0", real(l0)),
            ("phi0", real(phi0)),
            ("dt", real(dt)),
            ("steps", json!(steps)),
            ("every", json!(every)),
        ]),
        payload,
        csv: csv.finish(),
    })
}

/// Grid, conjugate, frame and classification, attached to every document.
pub fn metadata(j: &QuadrupleJ) -> Result<Value, Failure> {
    let grid = j.grid()?;
    let conj = qvolume::regge_conjugate(j)?;
    let f = qvolume::regge_frame(j)?;
    Ok(json!({
        "l_min": half(grid.l_min),
        "l_max": half(grid.l_max),
        "dim": grid.dim,
        "regge_conjugate": halves(&conj.j),
        "regge_frame": {
            "s": half(f.s),
            "u": half(f.u),
            "v": half(f.v),
            "r": half(f.r),
        },
        "regge_frame_magnitudes": {
            "s": half(f.s.abs()),
            "u": half(f.u.abs()),
            "v": half(f.v.abs()),
            "r": half(f.r.abs()),
        },
        "flags": {
            "tangential": f.tangential(),
            "ex_tangential_u": f.ex_tangential_u(),
            "ex_tangential_v": f.ex_tangential_v(),
            "self_conjugate_class": f.self_conjugate_class(),
        },
    }))
}
