//! Hypersurfaces with constant principal curvatures in M²κ₁ × M²κ₂.
//!
//! The cylinder families are Γ × M² and M² × Γ for a curve Γ of constant
//! geodesic curvature k in one factor:
//!
//! | factor | k = 0    | 0 < |k| < 1 | |k| = 1   | |k| > 1 |
//! |--------|----------|-------------|-----------|---------|
//! | ℝ²     | line     | circle      | circle    | circle  |
//! | 𝕊²     | great circle | small circle | small circle | small circle |
//! | ℍ²     | geodesic | equidistant | horocycle | circle  |
//!
//! Curves are unit speed and the normal is oriented toward the center of
//! curvature, so the nonzero principal curvature equals k (the orientation is
//! flipped for k < 0). The third example is the map Ψ into ℍ² × ℝ² built from the
//! horocycle γ₁(r) = ((2+r²)/2, r, r²/2).

use serde::{Deserialize, Serialize};

use crate::ambient::{ProductPoint, ProductSpace, ProductVector};
use crate::error::{GeoError, Result};
use crate::hypersurface::{Immersion, ParamBox};
use crate::spaceform::{Kappa, ModelPoint, ModelVector};

/// Ψ parameters; the defaults are c = 1/4, V₀ = (1, 0), W₀ = (0, 1), X₀ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiParams {
    pub c: f64,
    pub v0: [f64; 2],
    pub w0: [f64; 2],
    pub x0: [f64; 2],
}

impl Default for PsiParams {
    fn default() -> Self {
        Self {
            c: 0.25,
            v0: [1.0, 0.0],
            w0: [0.0, 1.0],
            x0: [0.0, 0.0],
        }
    }
}

impl PsiParams {
    pub fn with_c(c: f64) -> Self {
        Self {
            c,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(GeoError::InvalidExample(format!(
                "Psi needs 0 < c < 1, got {}",
                self.c
            )));
        }
        let dot = |a: &[f64; 2], b: &[f64; 2]| a[0] * b[0] + a[1] * b[1];
        let tol = 1e-10;
        if (dot(&self.v0, &self.v0) - 1.0).abs() > tol
            || (dot(&self.w0, &self.w0) - 1.0).abs() > tol
        {
            return Err(GeoError::InvalidExample(
                "V0 and W0 must be unit vectors".into(),
            ));
        }
        if dot(&self.v0, &self.w0).abs() > tol {
            return Err(GeoError::InvalidExample(
                "V0 and W0 must be orthogonal".into(),
            ));
        }
        if self.x0.iter().any(|x| !x.is_finite()) {
            return Err(GeoError::InvalidExample("X0 must be finite".into()));
        }
        Ok(())
    }

    /// The constant value 1 − 2c of the product angle.
    pub fn expected_angle(&self) -> f64 {
        1.0 - 2.0 * self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExampleSpec {
    /// Γ × M²κ₂ with Γ ⊂ M²κ₁ of curvature k; parameters (s, a, b).
    CurveTimesFactor { curve: Kappa, factor: Kappa, k: f64 },
    /// M²κ₁ × Γ with Γ ⊂ M²κ₂ of curvature k; parameters (a, b, s).
    FactorTimesCurve { factor: Kappa, curve: Kappa, k: f64 },
    /// Ψ(t, r, s) ⊂ ℍ² × ℝ².
    Psi(PsiParams),
}

impl ExampleSpec {
    pub fn space(&self) -> ProductSpace {
        match *self {
            ExampleSpec::CurveTimesFactor { curve, factor, .. } => ProductSpace::new(curve, factor),
            ExampleSpec::FactorTimesCurve { factor, curve, .. } => ProductSpace::new(factor, curve),
            ExampleSpec::Psi(_) => ProductSpace::new(Kappa::Hyperbolic, Kappa::Flat),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            ExampleSpec::CurveTimesFactor { curve, factor, k } => {
                format!("{}(k={k}) x {factor}", curve_name(curve, k))
            }
            ExampleSpec::FactorTimesCurve { factor, curve, k } => {
                format!("{factor} x {}(k={k})", curve_name(curve, k))
            }
            ExampleSpec::Psi(p) => format!("psi(c={})", p.c),
        }
    }

    /// The constant product angle: +1, −1, or 1 − 2c.
    pub fn expected_angle(&self) -> f64 {
        match self {
            ExampleSpec::CurveTimesFactor { .. } => 1.0,
            ExampleSpec::FactorTimesCurve { .. } => -1.0,
            ExampleSpec::Psi(p) => p.expected_angle(),
        }
    }

    /// Expected principal curvatures, descending, where they are known in closed form.
    pub fn expected_principal_curvatures(&self) -> Option<[f64; 3]> {
        match *self {
            ExampleSpec::CurveTimesFactor { k, .. } | ExampleSpec::FactorTimesCurve { k, .. } => {
                let mut v = [k, 0.0, 0.0];
                v.sort_by(|a, b| b.total_cmp(a));
                Some(v)
            }
            ExampleSpec::Psi(_) => None,
        }
    }
}

fn curve_name(kappa: Kappa, k: f64) -> &'static str {
    let a = k.abs();
    match kappa {
        Kappa::Flat if a == 0.0 => "line",
        Kappa::Flat => "circle",
        Kappa::Spherical if a == 0.0 => "great-circle",
        Kappa::Spherical => "small-circle",
        Kappa::Hyperbolic if a == 0.0 => "geodesic",
        Kappa::Hyperbolic if a < 1.0 => "equidistant",
        Kappa::Hyperbolic if a == 1.0 => "horocycle",
        Kappa::Hyperbolic => "circle",
    }
}

/// Point, unit tangent and center-side unit normal of the unit-speed curve of
/// geodesic curvature |k| at arclength s.
struct CurveFrame {
    point: [f64; 3],
    tangent: [f64; 3],
    normal: [f64; 3],
}

fn curve_frame(kappa: Kappa, k: f64, s: f64) -> CurveFrame {
    let a = k.abs();
    match kappa {
        Kappa::Flat if a == 0.0 => CurveFrame {
            point: [s, 0.0, 0.0],
            tangent: [1.0, 0.0, 0.0],
            normal: [0.0, 1.0, 0.0],
        },
        Kappa::Flat => {
            // Radius 1/a about (0, 1/a).
            let r = 1.0 / a;
            let (sn, cs) = (s * a).sin_cos();
            CurveFrame {
                point: [r * sn, r - r * cs, 0.0],
                tangent: [cs, sn, 0.0],
                normal: [-sn, cs, 0.0],
            }
        }
        Kappa::Spherical => {
            // Latitude circle at polar angle θ₀ with cot θ₀ = a.
            let theta = 1.0_f64.atan2(a);
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = (s / st).sin_cos();
            CurveFrame {
                point: [st * cp, st * sp, ct],
                tangent: [-sp, cp, 0.0],
                normal: [-ct * cp, -ct * sp, st],
            }
        }
        Kappa::Hyperbolic if a < 1.0 => {
            // Equidistant at distance d = atanh a from the geodesic x₃ = 0.
            let d = a.atanh();
            let (sd, cd) = (d.sinh(), d.cosh());
            let sigma = s / cd;
            let (ss, cs) = (sigma.sinh(), sigma.cosh());
            CurveFrame {
                point: [cd * cs, cd * ss, sd],
                tangent: [ss, cs, 0.0],
                normal: [-sd * cs, -sd * ss, -cd],
            }
        }
        Kappa::Hyperbolic if a == 1.0 => {
            let h = s * s / 2.0;
            CurveFrame {
                point: [1.0 + h, s, h],
                tangent: [s, 1.0, s],
                normal: [-h, -s, 1.0 - h],
            }
        }
        Kappa::Hyperbolic => {
            // Circle of radius ρ₀ = atanh(1/a) about the origin.
            let rho = (1.0 / a).atanh();
            let (sr, cr) = (rho.sinh(), rho.cosh());
            let (sp, cp) = (s / sr).sin_cos();
            CurveFrame {
                point: [cr, sr * cp, sr * sp],
                tangent: [0.0, -sp, cp],
                normal: [-sr, -cr * cp, -cr * sp],
            }
        }
    }
}

/// Chart of a whole factor: point and the two coordinate derivatives.
fn factor_chart(kappa: Kappa, a: f64, b: f64) -> [[f64; 3]; 3] {
    match kappa {
        Kappa::Flat => [[a, b, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        Kappa::Spherical => {
            let (sa, ca) = a.sin_cos();
            let (sb, cb) = b.sin_cos();
            [
                [ca * cb, sa * cb, sb],
                [-sa * cb, ca * cb, 0.0],
                [-ca * sb, -sa * sb, cb],
            ]
        }
        Kappa::Hyperbolic => {
            let (sa, ca) = (a.sinh(), a.cosh());
            let (sb, cb) = (b.sinh(), b.cosh());
            [
                [ca * cb, sa * cb, sb],
                [sa * cb, ca * cb, 0.0],
                [ca * sb, sa * sb, cb],
            ]
        }
    }
}

fn check_curvature(k: f64) -> Result<()> {
    if k.is_finite() {
        Ok(())
    } else {
        Err(GeoError::InvalidExample(format!(
            "curve curvature must be finite, got {k}"
        )))
    }
}

/// Builds the immersion with analytic Jacobian on the parameter box [−1, 1]³.
pub fn build_example(spec: &ExampleSpec) -> Result<Immersion> {
    let domain = ParamBox::cube(1.0);
    let space = spec.space();
    match *spec {
        ExampleSpec::CurveTimesFactor { curve, factor, k } => {
            check_curvature(k)?;
            let point = move |u: &[f64; 3]| {
                let cf = curve_frame(curve, k, u[0]);
                let ch = factor_chart(factor, u[1], u[2]);
                ProductPoint::new(
                    ModelPoint::project(curve, cf.point),
                    ModelPoint::project(factor, ch[0]),
                )
            };
            let imm =
                Immersion::new(space, domain, move |u| Ok(point(u))).with_jacobian(move |u| {
                    let p = point(u);
                    let cf = curve_frame(curve, k, u[0]);
                    let ch = factor_chart(factor, u[1], u[2]);
                    let (z1, z2) = (ModelVector::zero(p.first), ModelVector::zero(p.second));
                    Ok([
                        ProductVector::new(ModelVector::from_raw(p.first, cf.tangent)?, z2),
                        ProductVector::new(z1, ModelVector::from_raw(p.second, ch[1])?),
                        ProductVector::new(z1, ModelVector::from_raw(p.second, ch[2])?),
                    ])
                });
            let center = domain.center();
            let p = point(&center);
            let nu = ModelVector::from_raw(p.first, curve_frame(curve, k, center[0]).normal)?;
            let reference = ProductVector::new(nu * sign_of(k), ModelVector::zero(p.second));
            Ok(imm
                .oriented_toward(&center, &reference)?
                .with_label(spec.label()))
        }
        ExampleSpec::FactorTimesCurve { factor, curve, k } => {
            check_curvature(k)?;
            let point = move |u: &[f64; 3]| {
                let ch = factor_chart(factor, u[0], u[1]);
                let cf = curve_frame(curve, k, u[2]);
                ProductPoint::new(
                    ModelPoint::project(factor, ch[0]),
                    ModelPoint::project(curve, cf.point),
                )
            };
            let imm =
                Immersion::new(space, domain, move |u| Ok(point(u))).with_jacobian(move |u| {
                    let p = point(u);
                    let ch = factor_chart(factor, u[0], u[1]);
                    let cf = curve_frame(curve, k, u[2]);
                    let (z1, z2) = (ModelVector::zero(p.first), ModelVector::zero(p.second));
                    Ok([
                        ProductVector::new(ModelVector::from_raw(p.first, ch[1])?, z2),
                        ProductVector::new(ModelVector::from_raw(p.first, ch[2])?, z2),
                        ProductVector::new(z1, ModelVector::from_raw(p.second, cf.tangent)?),
                    ])
                });
            let center = domain.center();
            let p = point(&center);
            let nu = ModelVector::from_raw(p.second, curve_frame(curve, k, center[2]).normal)?;
            let reference = ProductVector::new(ModelVector::zero(p.first), nu * sign_of(k));
            Ok(imm
                .oriented_toward(&center, &reference)?
                .with_label(spec.label()))
        }
        ExampleSpec::Psi(params) => {
            params.validate()?;
            let imm = Immersion::new(space, domain, move |u| Ok(psi_point(&params, params.c, u)))
                .with_jacobian(move |u| psi_jacobian(&params, u));
            let center = domain.center();
            let reference = psi_normal(&params, &center)?;
            Ok(imm
                .oriented_toward(&center, &reference)?
                .with_label(spec.label()))
        }
    }
}

fn sign_of(k: f64) -> f64 {
    if k < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn horocycle(r: f64) -> [f64; 3] {
    [(2.0 + r * r) / 2.0, r, r * r / 2.0]
}

fn horocycle_normal(r: f64) -> [f64; 3] {
    [r * r / 2.0, r, (-2.0 + r * r) / 2.0]
}

fn combine(a: f64, x: &[f64; 3], b: f64, y: &[f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| a * x[i] + b * y[i])
}

/// Ψ with the constant c in p(t, r) replaced by `c_p`; q always uses `params.c`.
fn psi_point(params: &PsiParams, c_p: f64, u: &[f64; 3]) -> ProductPoint {
    let [t, r, s] = *u;
    let w = t * c_p.sqrt();
    let p = combine(w.cosh(), &horocycle(r), w.sinh(), &horocycle_normal(r));
    let m = t * (1.0 - params.c).sqrt();
    let q = [
        params.x0[0] + s * params.v0[0] + m * params.w0[0],
        params.x0[1] + s * params.v0[1] + m * params.w0[1],
        0.0,
    ];
    ProductPoint::new(
        ModelPoint::project(Kappa::Hyperbolic, p),
        ModelPoint::project(Kappa::Flat, q),
    )
}

fn psi_jacobian(params: &PsiParams, u: &[f64; 3]) -> Result<[ProductVector; 3]> {
    let p = psi_point(params, params.c, u);
    let [t, r, _] = *u;
    let sc = params.c.sqrt();
    let (sh, ch) = ((t * sc).sinh(), (t * sc).cosh());
    let (g, n) = (horocycle(r), horocycle_normal(r));
    // γ₁′ = N′ = (r, 1, r)
    let d = [r, 1.0, r];
    let dt_p = combine(sc * sh, &g, sc * ch, &n);
    let dr_p = d.map(|x| (ch + sh) * x);
    let m = (1.0 - params.c).sqrt();
    let dt_q = [m * params.w0[0], m * params.w0[1], 0.0];
    let dq_s = [params.v0[0], params.v0[1], 0.0];
    let (z1, z2) = (ModelVector::zero(p.first), ModelVector::zero(p.second));
    Ok([
        ProductVector::new(
            ModelVector::from_raw(p.first, dt_p)?,
            ModelVector::from_raw(p.second, dt_q)?,
        ),
        ProductVector::new(ModelVector::from_raw(p.first, dr_p)?, z2),
        ProductVector::new(z1, ModelVector::from_raw(p.second, dq_s)?),
    ])
}

/// The unit normal (√(1−c)·u₁, −√c·W₀) of Ψ, u₁ = sinh(t√c)γ₁(r) + cosh(t√c)N(r).
pub fn psi_normal(params: &PsiParams, u: &[f64; 3]) -> Result<ProductVector> {
    params.validate()?;
    let p = psi_point(params, params.c, u);
    let [t, r, _] = *u;
    let w = t * params.c.sqrt();
    let u1 = combine(w.sinh(), &horocycle(r), w.cosh(), &horocycle_normal(r));
    let a = (1.0 - params.c).sqrt();
    let b = params.c.sqrt();
    Ok(ProductVector::new(
        ModelVector::from_raw(p.first, u1.map(|x| a * x))?,
        ModelVector::from_raw(p.second, [-b * params.w0[0], -b * params.w0[1], 0.0])?,
    ))
}

/// Negative control: Ψ with c replaced by c(1 + 0.1 sin r) in p(t, r). No analytic Jacobian.
pub fn perturbed_psi(params: &PsiParams) -> Result<Immersion> {
    params.validate()?;
    let params = *params;
    let domain = ParamBox::cube(1.0);
    let imm = Immersion::new(
        ProductSpace::new(Kappa::Hyperbolic, Kappa::Flat),
        domain,
        move |u| Ok(psi_point(&params, params.c * (1.0 + 0.1 * u[1].sin()), u)),
    );
    let center = domain.center();
    let reference = psi_normal(&params, &center)?;
    Ok(imm
        .oriented_toward(&center, &reference)?
        .with_label(format!("perturbed-psi(c={})", params.c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{angle_function, shape_operator_default, unit_normal};
    use crate::spaceform::pairing;

    #[test]
    fn horocycle_lies_on_hyperboloid_with_unit_normal() {
        for r in [-3.0, -0.4, 0.0, 1.1, 7.5] {
            let (g, n) = (horocycle(r), horocycle_normal(r));
            let k = Kappa::Hyperbolic;
            assert!((pairing(k, &g, &g) + 1.0).abs() < 1e-12 * (1.0 + r.powi(4)));
            assert!(pairing(k, &g, &n).abs() < 1e-12 * (1.0 + r.powi(4)));
            assert!((pairing(k, &n, &n) - 1.0).abs() < 1e-12 * (1.0 + r.powi(4)));
        }
    }

    #[test]
    fn psi_base_point() {
        let imm = build_example(&ExampleSpec::Psi(PsiParams::default())).unwrap();
        let p = imm.eval(&[0.0; 3]).unwrap();
        assert_eq!(p.first.coords(), &[1.0, 0.0, 0.0]);
        assert_eq!(p.second.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn psi_normal_matches_numeric_normal() {
        let params = PsiParams::with_c(0.3);
        let imm = build_example(&ExampleSpec::Psi(params)).unwrap();
        for u in [[0.2, -0.5, 0.9], [-1.0, 1.0, 0.0]] {
            let n = unit_normal(&imm, &u).unwrap();
            let want = psi_normal(&params, &u).unwrap();
            assert!((n - want).norm() < 1e-12);
            let (c, _) = angle_function(&imm, &u).unwrap();
            assert!((c - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_psi_parameters() {
        for bad in [
            PsiParams::with_c(0.0),
            PsiParams::with_c(1.0),
            PsiParams {
                w0: [1.0, 0.0],
                ..PsiParams::default()
            },
            PsiParams {
                v0: [2.0, 0.0],
                ..PsiParams::default()
            },
        ] {
            assert!(matches!(
                build_example(&ExampleSpec::Psi(bad)),
                Err(GeoError::InvalidExample(_))
            ));
        }
        let bad = ExampleSpec::CurveTimesFactor {
            curve: Kappa::Flat,
            factor: Kappa::Flat,
            k: f64::NAN,
        };
        assert!(build_example(&bad).is_err());
    }

    #[test]
    fn curve_frames_are_consistent() {
        for kappa in Kappa::ALL {
            for k in [0.0, 0.5, 1.0, 2.0] {
                let f = curve_frame(kappa, k, 0.37);
                let g = |a: &[f64; 3], b: &[f64; 3]| pairing(kappa, a, b);
                assert!(g(&f.tangent, &f.point).abs() < 1e-14 || kappa == Kappa::Flat);
                assert!(g(&f.normal, &f.point).abs() < 1e-14 || kappa == Kappa::Flat);
                assert!((g(&f.tangent, &f.tangent) - 1.0).abs() < 1e-14);
                assert!((g(&f.normal, &f.normal) - 1.0).abs() < 1e-14);
                assert!(g(&f.tangent, &f.normal).abs() < 1e-14);
                // Unit speed: central difference of the point equals the tangent.
                let h = 1e-6;
                let (a, b) = (
                    curve_frame(kappa, k, 0.37 + h),
                    curve_frame(kappa, k, 0.37 - h),
                );
                for i in 0..3 {
                    assert!(((a.point[i] - b.point[i]) / (2.0 * h) - f.tangent[i]).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn circle_in_plane_times_sphere() {
        let spec = ExampleSpec::CurveTimesFactor {
            curve: Kappa::Flat,
            factor: Kappa::Spherical,
            k: 0.5,
        };
        let imm = build_example(&spec).unwrap();
        let rec = shape_operator_default(&imm, &[0.4, -0.3, 0.2]).unwrap();
        let pc = rec.principal_curvatures();
        assert!((pc[0] - 0.5).abs() < 1e-6 && pc[1].abs() < 1e-6 && pc[2].abs() < 1e-6);
        assert_eq!(rec.c, 1.0);
    }

    #[test]
    fn negative_curvature_flips_orientation() {
        let spec = ExampleSpec::FactorTimesCurve {
            factor: Kappa::Spherical,
            curve: Kappa::Hyperbolic,
            k: -2.0,
        };
        let imm = build_example(&spec).unwrap();
        let rec = shape_operator_default(&imm, &[0.1, 0.2, 0.3]).unwrap();
        let pc = rec.principal_curvatures();
        assert!((pc[2] + 2.0).abs() < 1e-6 && pc[0].abs() < 1e-6);
        assert_eq!(rec.c, -1.0);
        assert_eq!(spec.expected_principal_curvatures(), Some([0.0, 0.0, -2.0]));
    }
}
