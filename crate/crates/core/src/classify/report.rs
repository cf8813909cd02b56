//! Grid statistics of H(l), C and the principal curvatures along the normal flow.
//!
//! At each grid point the shape operator is computed numerically in the
//! adapted frame (completed at C = ±1) and pushed to Φ_l by A_l = −Q′Q⁻¹.
//! The angle of Φ_l is read off the flowed normal γ′(l).

use nalgebra::Matrix3;
use rayon::prelude::*;
use serde::Serialize;

use crate::ambient::product_structure;
use crate::error::{GeoError, Result};
use crate::hypersurface::{
    angle_of_normal, orthonormal_tangent_basis, principal_curvatures, ricci, shape_operator,
    unit_normal, Immersion,
};
use crate::jacobi::{
    extended_frame, flowed_normal, flowed_shape, parallel_immersion, transport_along_normal,
    CaseParams, FrameShape,
};

/// One (grid point, l) evaluation. Focal rows carry NaN values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowRow {
    pub u: [f64; 3],
    pub l: f64,
    pub h: f64,
    pub c: f64,
    pub k: [f64; 3],
    pub focal: bool,
}

/// Summary of one quantity over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    /// max |x − mean|
    pub max_dev: f64,
    /// max − min
    pub range: f64,
    pub std: f64,
    pub pass: bool,
}

impl Stat {
    pub fn of(values: &[f64], tol: f64) -> Self {
        if values.is_empty() {
            return Self {
                mean: f64::NAN,
                max_dev: f64::NAN,
                range: f64::NAN,
                std: f64::NAN,
                pass: false,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let max_dev = values.iter().fold(0.0_f64, |m, x| m.max((x - mean).abs()));
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let std = (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
        Self {
            mean,
            max_dev,
            range: hi - lo,
            std,
            pass: max_dev < tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowSample {
    pub l: f64,
    pub h: Stat,
    pub c: Stat,
    pub principal: [Stat; 3],
    pub focal_points: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub label: String,
    pub space: String,
    pub grid_points: usize,
    pub tol: f64,
    pub samples: Vec<FlowSample>,
    pub pass: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub rows: Vec<FlowRow>,
}

impl IsoReport {
    pub fn at(&self, l: f64) -> Option<&FlowSample> {
        self.samples.iter().find(|s| s.l == l)
    }
}

fn symmetric_part(a: &Matrix3<f64>) -> Matrix3<f64> {
    (a + a.transpose()) * 0.5
}

fn rows_at(imm: &Immersion, u: &[f64; 3], ls: &[f64]) -> Result<Vec<FlowRow>> {
    let n = unit_normal(imm, u)?;
    let c = angle_of_normal(&n);
    let v = product_structure(&n) - n * c;
    let frame = extended_frame(&n, c, &v);
    let rec = shape_operator(imm, u, &frame)?;
    let cp = CaseParams::new(imm.space().first, imm.space().second, c)?;
    let fs = FrameShape::new(rec.a, &cp)?;
    ls.iter()
        .map(|&l| {
            let shape = if l == 0.0 {
                Ok(rec.a)
            } else {
                flowed_shape(&fs, &cp, l)
            };
            match shape {
                Ok(a) => Ok(FlowRow {
                    u: *u,
                    l,
                    h: a.trace(),
                    c: angle_of_normal(&flowed_normal(imm, u, l)?),
                    k: principal_curvatures(&symmetric_part(&a)),
                    focal: false,
                }),
                Err(GeoError::FocalPoint { .. }) => Ok(FlowRow {
                    u: *u,
                    l,
                    h: f64::NAN,
                    c: f64::NAN,
                    k: [f64::NAN; 3],
                    focal: true,
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Every (u, l) row in grid order, l varying fastest.
pub fn flow_rows(imm: &Immersion, grid: &[[f64; 3]], ls: &[f64]) -> Result<Vec<FlowRow>> {
    let per_point: Vec<Result<Vec<FlowRow>>> =
        grid.par_iter().map(|u| rows_at(imm, u, ls)).collect();
    let mut out = Vec::with_capacity(grid.len() * ls.len());
    for rows in per_point {
        out.extend(rows?);
    }
    Ok(out)
}

/// Constancy of H(l), C and the principal curvatures over `grid` for l ∈ {0} ∪ `l_samples`.
pub fn isoparametric_report(
    imm: &Immersion,
    grid: &[[f64; 3]],
    l_samples: &[f64],
    tol: f64,
) -> Result<IsoReport> {
    if grid.is_empty() {
        return Err(GeoError::Domain("empty parameter grid".into()));
    }
    let mut ls = vec![0.0];
    ls.extend(l_samples.iter().copied().filter(|l| *l != 0.0));
    let rows = flow_rows(imm, grid, &ls)?;

    let mut samples = Vec::with_capacity(ls.len());
    let mut focal_total = 0;
    for &l in &ls {
        let at_l: Vec<&FlowRow> = rows.iter().filter(|r| r.l == l && !r.focal).collect();
        let focal_points = rows.iter().filter(|r| r.l == l && r.focal).count();
        focal_total += focal_points;
        let col = |f: &dyn Fn(&FlowRow) -> f64| at_l.iter().map(|r| f(r)).collect::<Vec<_>>();
        let h = Stat::of(&col(&|r| r.h), tol);
        let c = Stat::of(&col(&|r| r.c), tol);
        let principal = [0, 1, 2].map(|i| Stat::of(&col(&|r| r.k[i]), tol));
        let pass = focal_points == 0 && h.pass && c.pass && principal.iter().all(|s| s.pass);
        samples.push(FlowSample {
            l,
            h,
            c,
            principal,
            focal_points,
            pass,
        });
    }
    let note = (focal_total > 0).then(|| format!("{focal_total} focal evaluations excluded"));
    Ok(IsoReport {
        label: imm.label().to_string(),
        space: imm.space().label(),
        grid_points: grid.len(),
        tol,
        pass: samples.iter().all(|s| s.pass),
        samples,
        note,
        rows,
    })
}

/// Largest entrywise gap between A_l = −Q′Q⁻¹ and the numeric shape operator
/// of Φ_l at u, both in the frame transported along the normal geodesic.
pub fn jacobi_flow_defect(imm: &Immersion, u: &[f64; 3], l: f64) -> Result<f64> {
    let n = unit_normal(imm, u)?;
    let c = angle_of_normal(&n);
    let frame = extended_frame(&n, c, &(product_structure(&n) - n * c));
    let rec = shape_operator(imm, u, &frame)?;
    let cp = CaseParams::new(imm.space().first, imm.space().second, c)?;
    let predicted = flowed_shape(&FrameShape::new(rec.a, &cp)?, &cp, l)?;

    let moved = transport_along_normal(imm, u, l, &frame)?;
    let flowed = parallel_immersion(imm, l).oriented_toward(u, &flowed_normal(imm, u, l)?)?;
    let measured = shape_operator(&flowed, u, &moved)?;
    Ok((measured.a - predicted).abs().max())
}

/// |Σᵢ Ric(eᵢ, eᵢ) − ρ| over an orthonormal tangent frame at Φ(u).
pub fn ricci_trace_defect(imm: &Immersion, u: &[f64; 3]) -> Result<f64> {
    let basis = orthonormal_tangent_basis(imm, u)?;
    let rec = shape_operator(imm, u, &basis)?;
    let trace: f64 = basis.iter().map(|e| ricci(e, &rec, &rec.normal)).sum();
    Ok((trace - rec.invariants.rho).abs())
}
