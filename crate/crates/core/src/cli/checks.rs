//! The verification suites behind each CLI command.

use nalgebra::Matrix3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Family, RunConfig};
use crate::ambient::{
    complex_structures, curvature_tensor, product_structure, ProductSpace, ProductVector,
};
use crate::classify::{
    build_example, case_alphas, constancy_polynomial, invariants_from_alphas, isoparametric_report,
    jacobi_flow_defect, leading_coefficients_vanish, perturbed_psi, ricci_trace_defect,
    AlphaRecord, CaseId, ExampleSpec, IsoReport, PsiParams,
};
use crate::error::Result;
use crate::hypersurface::ParamBox;
use crate::jacobi::{
    detq_closed_form, detq_derivative_formula, detq_taylor, detq_taylor_at, q_matrix,
    q_matrix_derivative, CaseParams, FrameShape, DEFAULT_ORDER, FORMULA_ORDERS,
};
use crate::sampling::{
    random_angle, random_product_point, random_shape, random_tangent, seeded, uniform, SampleRng,
};
use crate::spaceform::Kappa;

pub const STRUCTURE_TOL: f64 = 1e-12;
pub const DERIVATIVE_REL_TOL: f64 = 1e-10;
pub const DETQ_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const ROUND_TRIP_TOL: f64 = 1e-10;
pub const ROOT_TOL: f64 = 1e-8;
pub const ANGLE_TOL: f64 = 1e-8;
pub const CURVATURE_TOL: f64 = 1e-6;
pub const RICCI_TOL: f64 = 1e-8;
pub const JACOBI_TOL: f64 = 1e-4;
pub const CONTROL_TOL: f64 = 1e-3;
/// The curve curvatures swept by the gallery when none is given.
pub const GALLERY_CURVATURES: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub samples: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Judge {
    Absolute,
    Relative,
    /// Passes when the error exceeds the tolerance (negative controls).
    Exceeds,
}

struct Check {
    name: String,
    anchor: String,
    tol: f64,
    judge: Judge,
    samples: usize,
    max_abs: f64,
    max_rel: f64,
    saw_nan: bool,
}

impl Check {
    fn new(name: impl Into<String>, anchor: impl Into<String>, tol: f64, judge: Judge) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            tol,
            judge,
            samples: 0,
            max_abs: 0.0,
            max_rel: 0.0,
            saw_nan: false,
        }
    }

    fn error(&mut self, abs: f64, rel: f64) {
        self.samples += 1;
        if abs.is_nan() || rel.is_nan() {
            self.saw_nan = true;
        }
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    /// Records |got − want| with relative error |got − want|/|want|.
    fn compare(&mut self, got: f64, want: f64) {
        let abs = (got - want).abs();
        let rel = if want == 0.0 { abs } else { abs / want.abs() };
        self.error(abs, rel);
    }

    /// Records |got − want| with relative error |got − want|/max(1, |want|).
    fn compare_scaled(&mut self, got: f64, want: f64) {
        let abs = (got - want).abs();
        self.error(abs, abs / want.abs().max(1.0));
    }

    fn finish(self) -> CheckRecord {
        let pass = !self.saw_nan
            && self.samples > 0
            && match self.judge {
                Judge::Absolute => self.max_abs <= self.tol,
                Judge::Relative => self.max_rel <= self.tol,
                Judge::Exceeds => self.max_abs > self.tol,
            };
        let nan_or = |x: f64| if self.saw_nan { f64::NAN } else { x };
        CheckRecord {
            name: self.name,
            anchor: self.anchor,
            samples: self.samples,
            max_abs_err: nan_or(self.max_abs),
            max_rel_err: nan_or(self.max_rel),
            tol: self.tol,
            pass,
        }
    }
}

fn tol(cfg: &RunConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

fn selected_cases(cfg: &RunConfig) -> Vec<CaseId> {
    match cfg.case {
        Some(c) => vec![c],
        None => CaseId::ALL.to_vec(),
    }
}

fn all_spaces() -> Vec<ProductSpace> {
    Kappa::ALL
        .iter()
        .flat_map(|a| Kappa::ALL.iter().map(move |b| ProductSpace::new(*a, *b)))
        .collect()
}

// ---------------------------------------------------------------- identities

struct StructureSample {
    x: ProductVector,
    y: ProductVector,
    /// Orthonormal pairs spanning a first-factor, a second-factor and a mixed plane.
    planes: [(ProductVector, ProductVector); 3],
}

fn structure_sample(space: ProductSpace, rng: &mut SampleRng) -> StructureSample {
    let p = random_product_point(space, rng);
    let x = random_tangent(&p, rng);
    let y = random_tangent(&p, rng);
    let f = p.frame();
    let rot = |a: f64, e: &ProductVector, g: &ProductVector| {
        (*e * a.cos() + *g * a.sin(), *g * a.cos() - *e * a.sin())
    };
    let t1 = uniform(rng, 0.0, std::f64::consts::TAU);
    let t2 = uniform(rng, 0.0, std::f64::consts::TAU);
    let t3 = uniform(rng, 0.0, std::f64::consts::TAU);
    let (a1, b1) = rot(t1, &f[0], &f[1]);
    let (a2, b2) = rot(t2, &f[2], &f[3]);
    let mixed = (a1, rot(t3, &f[2], &f[3]).0);
    StructureSample {
        x,
        y,
        planes: [(a1, b1), (a2, b2), mixed],
    }
}

pub fn identities(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let spaces = match cfg.case {
        Some(c) => {
            let (a, b) = c.kappas();
            vec![ProductSpace::new(a, b)]
        }
        None => all_spaces(),
    };
    let t = tol(cfg, STRUCTURE_TOL);
    let mut p2 = Check::new(
        "structure.p_squared",
        "P^2 = Id",
        tol(cfg, 0.0),
        Judge::Absolute,
    );
    let mut psym = Check::new(
        "structure.p_symmetric",
        "<PX,Y> = <X,PY>",
        t,
        Judge::Absolute,
    );
    let mut p12 = Check::new("structure.p_from_j1j2", "P = -J1 J2", t, Judge::Absolute);
    let mut p21 = Check::new("structure.p_from_j2j1", "P = -J2 J1", t, Judge::Absolute);
    let mut j1 = Check::new("structure.j1_squared", "J1^2 = -Id", t, Judge::Absolute);
    let mut j2 = Check::new("structure.j2_squared", "J2^2 = -Id", t, Judge::Absolute);
    let mut sec = [
        Check::new(
            "curvature.first_factor",
            "R(X,Y,Y,X) = kappa1 on first-factor planes",
            t,
            Judge::Absolute,
        ),
        Check::new(
            "curvature.second_factor",
            "R(X,Y,Y,X) = kappa2 on second-factor planes",
            t,
            Judge::Absolute,
        ),
        Check::new(
            "curvature.mixed",
            "R(X,Y,Y,X) = 0 on mixed planes",
            t,
            Judge::Absolute,
        ),
    ];

    let mut rng = seeded(cfg.seed);
    for space in spaces {
        let samples: Vec<StructureSample> = (0..cfg.samples)
            .map(|_| structure_sample(space, &mut rng))
            .collect();
        let (k1, k2) = space.kappas();
        let results: Vec<Result<[f64; 9]>> = samples
            .par_iter()
            .map(|s| {
                let (x, y) = (s.x, s.y);
                let px = product_structure(&x);
                let py = product_structure(&y);
                let (j1x, j2x) = complex_structures(&x);
                let j1j2x = complex_structures(&j2x).0;
                let j2j1x = complex_structures(&j1x).1;
                let j1j1x = complex_structures(&j1x).0;
                let j2j2x = complex_structures(&j2x).1;
                let mut out = [
                    (product_structure(&px) - x).norm(),
                    (px.dot(&y) - x.dot(&py)).abs(),
                    (px + j1j2x).norm(),
                    (px + j2j1x).norm(),
                    (j1j1x + x).norm(),
                    (j2j2x + x).norm(),
                    0.0,
                    0.0,
                    0.0,
                ];
                for (i, ((a, b), want)) in s.planes.iter().zip([k1, k2, 0.0]).enumerate() {
                    out[6 + i] = (curvature_tensor(a, b, b, a)? - want).abs();
                }
                Ok(out)
            })
            .collect();
        for r in results {
            let e = r?;
            for (check, err) in [&mut p2, &mut psym, &mut p12, &mut p21, &mut j1, &mut j2]
                .into_iter()
                .zip(&e[..6])
            {
                check.error(*err, *err);
            }
            for (check, err) in sec.iter_mut().zip(&e[6..]) {
                check.error(*err, *err);
            }
        }
    }
    let mut out: Vec<CheckRecord> = [p2, psym, p12, p21, j1, j2]
        .into_iter()
        .map(Check::finish)
        .collect();
    out.extend(sec.into_iter().map(Check::finish));
    Ok(out)
}

// ---------------------------------------------------------------- detq

/// Per-order (got, want) pairs, then the closed-form and trace-identity pairs.
type DetqErrors = (Vec<(f64, f64)>, (f64, f64), (f64, f64));

struct DetqSample {
    fs: FrameShape,
    cp: CaseParams,
    l: f64,
}

fn detq_sample(case: CaseId, rng: &mut SampleRng) -> Result<DetqSample> {
    let (k1, k2) = case.kappas();
    let a = random_shape(rng);
    let cp = CaseParams::new(k1, k2, random_angle(rng))?;
    let fs = FrameShape::new(a, &cp)?;
    // Stay away from focal parameters, where −(det Q)′/det Q is ill-conditioned.
    let mut l = uniform(rng, -0.5, 0.5);
    while detq_closed_form(&fs, &cp, l).abs() < 0.05 {
        l = uniform(rng, -0.5, 0.5);
    }
    Ok(DetqSample { fs, cp, l })
}

fn trace_of_parallel_shape(q: &Matrix3<f64>, qp: &Matrix3<f64>) -> Option<f64> {
    q.try_inverse().map(|inv| -(qp * inv).trace())
}

pub fn detq(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = seeded(cfg.seed);
    for case in selected_cases(cfg) {
        let samples: Vec<DetqSample> = (0..cfg.samples)
            .map(|_| detq_sample(case, &mut rng))
            .collect::<Result<_>>()?;
        let orders: Vec<u32> = FORMULA_ORDERS
            .iter()
            .copied()
            .filter(|k| *k != 10 || case == CaseId::S2xH2)
            .collect();

        let results: Vec<Result<DetqErrors>> = samples
            .par_iter()
            .map(|s| {
                let series = detq_taylor(&s.fs, &s.cp, DEFAULT_ORDER);
                let ders = orders
                    .iter()
                    .map(|&k| {
                        Ok((
                            series.derivative_at_zero(k as usize),
                            detq_derivative_formula(k, &s.fs, &s.cp)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let q = q_matrix(&s.fs, &s.cp, s.l);
                let det_closed = detq_closed_form(&s.fs, &s.cp, s.l);
                let recentered = detq_taylor_at(&s.fs, &s.cp, s.l, 2);
                let trace = trace_of_parallel_shape(&q, &q_matrix_derivative(&s.fs, &s.cp, s.l))
                    .unwrap_or(f64::NAN);
                let h_series = -recentered.coeff(1) / recentered.coeff(0);
                Ok((ders, (q.determinant(), det_closed), (trace, h_series)))
            })
            .collect();

        let tag = case.tag();
        let mut der_checks: Vec<Check> = orders
            .iter()
            .map(|k| {
                Check::new(
                    format!("detq.{tag}.d{k}"),
                    format!(
                        "order-{k} derivative display of det Q at l = 0 vs k! c_k of the series"
                    ),
                    tol(cfg, DERIVATIVE_REL_TOL),
                    Judge::Relative,
                )
            })
            .collect();
        let mut det = Check::new(
            format!("detq.{tag}.closed_form"),
            "det of the Jacobi matrix Q(l) vs its closed form",
            tol(cfg, DETQ_TOL),
            Judge::Relative,
        );
        let mut trace = Check::new(
            format!("detq.{tag}.trace_identity"),
            "trace(-Q'Q^-1) = -(det Q)'/det Q",
            tol(cfg, TRACE_TOL),
            Judge::Relative,
        );
        for r in results {
            let (ders, (d_num, d_closed), (tr, h)) = r?;
            for (check, (got, want)) in der_checks.iter_mut().zip(ders) {
                check.compare(got, want);
            }
            det.compare_scaled(d_num, d_closed);
            trace.compare_scaled(tr, h);
        }
        out.extend(der_checks.into_iter().map(Check::finish));
        out.push(det.finish());
        out.push(trace.finish());
    }
    Ok(out)
}

// ---------------------------------------------------------------- cases

struct CaseSample {
    c: f64,
    rho: f64,
    h12: f64,
    h13: f64,
    alphas: AlphaRecord,
    alpha_c: f64,
}

fn case_sample(case: CaseId, rng: &mut SampleRng) -> CaseSample {
    let c = uniform(rng, -0.9, 0.9);
    let rho = uniform(rng, -4.0, 4.0);
    let h12 = if case.uses_h12() {
        uniform(rng, -2.0, 2.0)
    } else {
        0.0
    };
    let h13 = uniform(rng, -2.0, 2.0);
    let alphas = AlphaRecord {
        alpha1: uniform(rng, -3.0, 3.0),
        alpha2: uniform(rng, -3.0, 3.0),
        alpha3: uniform(rng, -3.0, 3.0),
        alpha4: case.uses_h12().then(|| uniform(rng, -3.0, 3.0)),
    };
    CaseSample {
        c,
        rho,
        h12,
        h13,
        alphas,
        alpha_c: uniform(rng, -0.9, 0.9),
    }
}

fn max_scaled_diff(pairs: &[(f64, f64)]) -> f64 {
    pairs
        .iter()
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs() / b.abs().max(1.0)))
}

pub fn cases(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = seeded(cfg.seed);
    for case in selected_cases(cfg) {
        let samples: Vec<CaseSample> = (0..cfg.samples)
            .map(|_| case_sample(case, &mut rng))
            .collect();
        let results: Vec<Result<[f64; 4]>> = samples
            .par_iter()
            .map(|s| {
                let ar = case_alphas(case, &s.c, &s.rho, &s.h12, &s.h13);
                let poly = constancy_polynomial(case, &ar)?;
                let residual = poly.evaluate_at_c(s.c).abs() / poly.max_abs_coeff();
                let root_err = if leading_coefficients_vanish(&poly) {
                    f64::INFINITY
                } else {
                    poly.c_roots()?
                        .iter()
                        .filter(|r| r.in_range)
                        .fold(f64::INFINITY, |m, r| m.min((r.value - s.c).abs()))
                };
                let solved = invariants_from_alphas(case, &ar, s.c)?;
                let mut pairs = vec![(solved.rho, s.rho), (solved.h13, s.h13)];
                if let Some(h12) = solved.h12 {
                    pairs.push((h12, s.h12));
                }
                let inv_err = max_scaled_diff(&pairs);

                let back = invariants_from_alphas(case, &s.alphas, s.alpha_c)?;
                let again = case_alphas(
                    case,
                    &s.alpha_c,
                    &back.rho,
                    &back.h12.unwrap_or(0.0),
                    &back.h13,
                );
                // Without H12 the system fixes α3 from (α1, α2, C), so only α1, α2 are free.
                let mut free = vec![
                    (again.alpha1, s.alphas.alpha1),
                    (again.alpha2, s.alphas.alpha2),
                ];
                if case.uses_h12() {
                    free.push((again.alpha3, s.alphas.alpha3));
                }
                let alpha_err = max_scaled_diff(&free);
                Ok([residual, root_err, inv_err, alpha_err])
            })
            .collect();

        let tag = case.tag();
        let mut checks = [
            Check::new(
                format!("cases.{tag}.residual"),
                "constancy polynomial built from the case alphas vanishes at C",
                tol(cfg, RESIDUAL_TOL),
                Judge::Relative,
            ),
            Check::new(
                format!("cases.{tag}.root_recovery"),
                "some real root in [-1, 1] of the constancy polynomial equals C",
                tol(cfg, ROOT_TOL),
                Judge::Absolute,
            ),
            Check::new(
                format!("cases.{tag}.invariants_round_trip"),
                "solved invariants of the case alphas reproduce the inputs",
                tol(cfg, ROUND_TRIP_TOL),
                Judge::Relative,
            ),
            Check::new(
                format!("cases.{tag}.alphas_round_trip"),
                "case alphas of the solved invariants reproduce the free alphas",
                tol(cfg, ROUND_TRIP_TOL),
                Judge::Relative,
            ),
        ];
        for r in results {
            let e = r?;
            // residual is already relative to max |coeff|
            checks[0].error(e[0], e[0]);
            checks[1].error(e[1], e[1]);
            checks[2].error(e[2], e[2]);
            checks[3].error(e[3], e[3]);
        }
        out.extend(checks.into_iter().map(Check::finish));
    }
    Ok(out)
}

// ---------------------------------------------------------------- gallery

/// The examples of one family selected by the configuration.
pub fn family_examples(cfg: &RunConfig, family: Family) -> Vec<ExampleSpec> {
    let ks: Vec<f64> = match cfg.k {
        Some(k) => vec![k],
        None => GALLERY_CURVATURES.to_vec(),
    };
    let spaces: Vec<ProductSpace> = match cfg.case {
        Some(c) => {
            let (a, b) = c.kappas();
            vec![ProductSpace::new(a, b)]
        }
        None => all_spaces(),
    };
    match family {
        Family::Psi => vec![ExampleSpec::Psi(PsiParams::with_c(cfg.c))],
        Family::Curve => spaces
            .iter()
            .flat_map(|s| {
                ks.iter().map(move |&k| ExampleSpec::CurveTimesFactor {
                    curve: s.first,
                    factor: s.second,
                    k,
                })
            })
            .collect(),
        Family::Factor => spaces
            .iter()
            .flat_map(|s| {
                ks.iter().map(move |&k| ExampleSpec::FactorTimesCurve {
                    factor: s.first,
                    curve: s.second,
                    k,
                })
            })
            .collect(),
        Family::All => [Family::Psi, Family::Curve, Family::Factor]
            .into_iter()
            .flat_map(|f| family_examples(cfg, f))
            .collect(),
    }
}

fn family_tag(spec: &ExampleSpec) -> &'static str {
    match spec {
        ExampleSpec::CurveTimesFactor { .. } => "curve",
        ExampleSpec::FactorTimesCurve { .. } => "factor",
        ExampleSpec::Psi(_) => "psi",
    }
}

fn principal_check(prefix: &str, cfg: &RunConfig) -> Check {
    Check::new(
        format!("{prefix}.principal_constancy"),
        "principal curvatures constant over the grid",
        tol(cfg, CURVATURE_TOL),
        Judge::Absolute,
    )
}

fn mean_check(prefix: &str, cfg: &RunConfig) -> Check {
    Check::new(
        format!("{prefix}.parallel_mean_curvature"),
        "H(l) of the parallel hypersurfaces constant over the grid",
        tol(cfg, CURVATURE_TOL),
        Judge::Absolute,
    )
}

/// Principal-curvature spread at l = 0 and H(l) spread for l ≠ 0; focal points fail.
fn record_flow(rep: &IsoReport, principal: &mut Check, mean: &mut Check) {
    for s in &rep.samples {
        if s.l == 0.0 {
            for st in &s.principal {
                principal.error(st.max_dev, st.max_dev);
            }
        } else if s.focal_points > 0 {
            mean.error(f64::NAN, f64::NAN);
        } else {
            mean.error(s.h.max_dev, s.h.max_dev);
        }
    }
}

pub fn gallery(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let grid = ParamBox::cube(1.0).grid(cfg.grid);
    let family = cfg.family.unwrap_or(Family::All);
    let mut out = Vec::new();
    // Grouped per family so each family yields one line per check.
    let mut groups: Vec<(&'static str, Vec<ExampleSpec>)> = Vec::new();
    for spec in family_examples(cfg, family) {
        let tag = family_tag(&spec);
        match groups.iter_mut().find(|(t, _)| *t == tag) {
            Some((_, v)) => v.push(spec),
            None => groups.push((tag, vec![spec])),
        }
    }
    for (tag, specs) in groups {
        let prefix = format!("gallery.{tag}");
        let mut angle = Check::new(
            format!("{prefix}.angle_constancy"),
            "product angle C constant over the grid",
            tol(cfg, ANGLE_TOL),
            Judge::Absolute,
        );
        let mut value = Check::new(
            format!("{prefix}.angle_value"),
            match tag {
                "psi" => "C equals 1 - 2c",
                "curve" => "C equals +1 exactly",
                _ => "C equals -1 exactly",
            },
            if tag == "psi" {
                tol(cfg, ANGLE_TOL)
            } else {
                tol(cfg, 0.0)
            },
            Judge::Absolute,
        );
        let mut expected_k = Check::new(
            format!("{prefix}.principal_values"),
            "principal curvatures equal (k, 0, 0)",
            tol(cfg, CURVATURE_TOL),
            Judge::Absolute,
        );
        let mut ricci = Check::new(
            format!("{prefix}.ricci_trace"),
            "trace of the Ricci display equals rho",
            tol(cfg, RICCI_TOL),
            Judge::Absolute,
        );
        let mut principal = principal_check(&prefix, cfg);
        let mut mean = mean_check(&prefix, cfg);
        for spec in &specs {
            let imm = build_example(spec)?;
            let rep = isoparametric_report(&imm, &grid, &cfg.l, tol(cfg, CURVATURE_TOL))?;
            record_flow(&rep, &mut principal, &mut mean);

            let want_c = spec.expected_angle();
            let want_k = spec.expected_principal_curvatures();
            for row in rep.rows.iter().filter(|r| r.l == 0.0) {
                value.error((row.c - want_c).abs(), (row.c - want_c).abs());
                if let Some(k) = want_k {
                    let e = (0..3).fold(0.0_f64, |m, i| m.max((row.k[i] - k[i]).abs()));
                    expected_k.error(e, e);
                }
            }
            let s0 = rep.at(0.0).expect("l = 0 is always sampled");
            angle.error(s0.c.max_dev, s0.c.max_dev);
            let defects: Vec<Result<f64>> = grid
                .par_iter()
                .map(|u| ricci_trace_defect(&imm, u))
                .collect();
            for d in defects {
                let d = d?;
                ricci.error(d, d);
            }
        }
        out.push(angle.finish());
        out.push(value.finish());
        if tag != "psi" {
            out.push(expected_k.finish());
        }
        out.push(principal.finish());
        out.push(mean.finish());
        out.push(ricci.finish());
        if tag == "psi" {
            out.push(negative_control(cfg, &grid)?);
        }
    }
    Ok(out)
}

/// Passes when the perturbed map is detected as non-isoparametric.
fn negative_control(cfg: &RunConfig, grid: &[[f64; 3]]) -> Result<CheckRecord> {
    let imm = perturbed_psi(&PsiParams::with_c(cfg.c))?;
    let rep = isoparametric_report(&imm, grid, &[], CONTROL_TOL)?;
    let dev = rep.at(0.0).expect("l = 0 is always sampled").c.max_dev;
    let mut check = Check::new(
        "gallery.psi.negative_control",
        "perturbed map c(1 + 0.1 sin r) must fail C constancy",
        CONTROL_TOL,
        Judge::Exceeds,
    );
    check.error(dev, dev);
    check.samples = grid.len();
    Ok(check.finish())
}

// ---------------------------------------------------------------- flow

/// The example flowed by the `flow` command.
pub fn flow_example(cfg: &RunConfig) -> ExampleSpec {
    let (a, b) = cfg.case.unwrap_or(CaseId::S2xH2).kappas();
    let k = cfg.k.unwrap_or(1.0);
    match cfg.family.unwrap_or(Family::Psi) {
        Family::Curve => ExampleSpec::CurveTimesFactor {
            curve: a,
            factor: b,
            k,
        },
        Family::Factor => ExampleSpec::FactorTimesCurve {
            factor: a,
            curve: b,
            k,
        },
        Family::Psi | Family::All => ExampleSpec::Psi(PsiParams::with_c(cfg.c)),
    }
}

pub fn flow(cfg: &RunConfig) -> Result<(Vec<CheckRecord>, IsoReport)> {
    let spec = flow_example(cfg);
    let imm = build_example(&spec)?;
    let grid = ParamBox::cube(1.0).grid(cfg.grid);
    let rep = isoparametric_report(&imm, &grid, &cfg.l, tol(cfg, CURVATURE_TOL))?;
    let mut angle = Check::new(
        "flow.angle_constancy",
        "product angle C constant over the grid for every l",
        tol(cfg, ANGLE_TOL),
        Judge::Absolute,
    );
    for s in &rep.samples {
        angle.error(s.c.max_dev, s.c.max_dev);
    }
    let mut principal = principal_check("flow", cfg);
    let mut mean = mean_check("flow", cfg);
    record_flow(&rep, &mut principal, &mut mean);

    let mut jacobi = Check::new(
        "flow.jacobi_vs_numeric",
        "A_l = -Q'Q^-1 vs the numeric shape operator of the flowed map, transported frame",
        tol(cfg, JACOBI_TOL),
        Judge::Absolute,
    );
    let pairs: Vec<([f64; 3], f64)> = grid
        .iter()
        .flat_map(|u| cfg.l.iter().filter(|l| **l != 0.0).map(move |l| (*u, *l)))
        .collect();
    let defects: Vec<f64> = pairs
        .par_iter()
        .map(|(u, l)| jacobi_flow_defect(&imm, u, *l).unwrap_or(f64::NAN))
        .collect();
    for d in defects {
        jacobi.error(d, d);
    }
    Ok((
        vec![
            angle.finish(),
            principal.finish(),
            mean.finish(),
            jacobi.finish(),
        ],
        rep,
    ))
}
