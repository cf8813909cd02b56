//! Parametrized hypersurfaces Σ ⊂ M²κ₁ × M²κ₂.
//!
//! An [`Immersion`] maps a box in ℝ³ into the product. Coordinate tangents come
//! from an analytic Jacobian when one is supplied, otherwise from central
//! differences. The unit normal is the generalized cross product of the three
//! tangents in a J-oriented orthonormal frame of the ambient tangent space, so
//! its sign varies continuously with the parameters. The shape operator is the
//! Weingarten map A = −∇̄N, obtained by Richardson-extrapolated central
//! differences of N along the parameter curves.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::ambient::{product_structure, ProductPoint, ProductSpace, ProductVector};
use crate::error::{GeoError, Result};
use crate::spaceform::{pairing, ModelVector};

/// Relative central-difference step for coordinate tangents.
pub const TANGENT_STEP: f64 = 1e-5;
/// Relative base step for differentiating the normal (halved once for Richardson).
pub const WEINGARTEN_STEP: f64 = 1e-3;
/// Smallest singular value of the coordinate tangents accepted as an immersion.
pub const IMMERSION_SIGMA_MIN: f64 = 1e-6;
/// Orthonormality tolerance on a user-supplied tangent basis.
pub const BASIS_TOL: f64 = 1e-8;

pub type PointMap = dyn Fn(&[f64; 3]) -> Result<ProductPoint> + Send + Sync;
pub type JacobianMap = dyn Fn(&[f64; 3]) -> Result<[ProductVector; 3]> + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl ParamBox {
    pub fn new(lo: [f64; 3], hi: [f64; 3]) -> Self {
        Self { lo, hi }
    }

    /// [−half, half]³.
    pub fn cube(half: f64) -> Self {
        Self::new([-half; 3], [half; 3])
    }

    pub fn center(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| 0.5 * (self.lo[i] + self.hi[i]))
    }

    pub fn contains(&self, u: &[f64; 3]) -> bool {
        (0..3).all(|i| {
            let slack = 1e-9 * (1.0 + self.lo[i].abs().max(self.hi[i].abs()));
            u[i] >= self.lo[i] - slack && u[i] <= self.hi[i] + slack
        })
    }

    /// Tensor grid with `n` points per axis, endpoints included.
    pub fn grid(&self, n: usize) -> Vec<[f64; 3]> {
        let axis = |i: usize| -> Vec<f64> {
            if n == 1 {
                return vec![0.5 * (self.lo[i] + self.hi[i])];
            }
            (0..n)
                .map(|k| self.lo[i] + (self.hi[i] - self.lo[i]) * k as f64 / (n - 1) as f64)
                .collect()
        };
        let (a, b, c) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(n * n * n);
        for x in &a {
            for y in &b {
                for z in &c {
                    out.push([*x, *y, *z]);
                }
            }
        }
        out
    }
}

/// A parametrized hypersurface u ↦ Φ(u) of a product of space forms.
#[derive(Clone)]
pub struct Immersion {
    space: ProductSpace,
    domain: ParamBox,
    map: Arc<PointMap>,
    jacobian: Option<Arc<JacobianMap>>,
    orientation: f64,
    label: String,
}

impl fmt::Debug for Immersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Immersion")
            .field("label", &self.label)
            .field("space", &self.space)
            .field("domain", &self.domain)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("orientation", &self.orientation)
            .finish()
    }
}

impl Immersion {
    pub fn new<F>(space: ProductSpace, domain: ParamBox, map: F) -> Self
    where
        F: Fn(&[f64; 3]) -> Result<ProductPoint> + Send + Sync + 'static,
    {
        Self {
            space,
            domain,
            map: Arc::new(map),
            jacobian: None,
            orientation: 1.0,
            label: String::from("immersion"),
        }
    }

    pub fn with_jacobian<J>(mut self, jacobian: J) -> Self
    where
        J: Fn(&[f64; 3]) -> Result<[ProductVector; 3]> + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(jacobian));
        self
    }

    pub fn without_jacobian(mut self) -> Self {
        self.jacobian = None;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Flips the normal when `sign` is negative.
    pub fn with_orientation(mut self, sign: f64) -> Self {
        self.orientation = if sign < 0.0 { -1.0 } else { 1.0 };
        self
    }

    /// Chooses the orientation whose normal at `u` has a nonnegative product with `reference`.
    pub fn oriented_toward(self, u: &[f64; 3], reference: &ProductVector) -> Result<Self> {
        let n = self.clone().with_orientation(1.0).normal_at(u)?;
        let s = if n.dot(reference) < 0.0 { -1.0 } else { 1.0 };
        Ok(self.with_orientation(s))
    }

    pub fn space(&self) -> ProductSpace {
        self.space
    }

    pub fn domain(&self) -> &ParamBox {
        &self.domain
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn eval(&self, u: &[f64; 3]) -> Result<ProductPoint> {
        (self.map)(u)
    }

    fn check_domain(&self, u: &[f64; 3]) -> Result<()> {
        if self.domain.contains(u) {
            Ok(())
        } else {
            Err(GeoError::Domain(format!(
                "parameter {u:?} lies outside {:?}",
                self.domain
            )))
        }
    }

    pub(crate) fn coordinate_tangents(&self, u: &[f64; 3]) -> Result<[ProductVector; 3]> {
        if let Some(jac) = &self.jacobian {
            return jac(u);
        }
        let p = self.eval(u)?;
        let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        let h = TANGENT_STEP.max(TANGENT_STEP * norm);
        let mut out = [ProductVector::zero(&p); 3];
        for (a, slot) in out.iter_mut().enumerate() {
            let (mut up, mut dn) = (*u, *u);
            up[a] += h;
            dn[a] -= h;
            let (pu, pd) = (self.eval(&up)?, self.eval(&dn)?);
            let diff = |x: &[f64; 3], y: &[f64; 3]| [0, 1, 2].map(|i| (x[i] - y[i]) / (2.0 * h));
            *slot = ProductVector::new(
                ModelVector::from_raw(p.first, diff(pu.first.raw(), pd.first.raw()))?,
                ModelVector::from_raw(p.second, diff(pu.second.raw(), pd.second.raw()))?,
            );
        }
        Ok(out)
    }

    /// Coordinate tangents plus the immersion check.
    pub(crate) fn checked_tangents(&self, u: &[f64; 3]) -> Result<[ProductVector; 3]> {
        let t = self.coordinate_tangents(u)?;
        let sigma = smallest_singular_value(&t);
        if !(sigma > IMMERSION_SIGMA_MIN) {
            return Err(GeoError::DegeneratePoint { u: *u, sigma });
        }
        Ok(t)
    }

    /// Oriented unit normal without the domain check (used inside difference stencils).
    pub(crate) fn normal_at(&self, u: &[f64; 3]) -> Result<ProductVector> {
        let t = self.checked_tangents(u)?;
        Ok(normal_from_tangents(&t) * self.orientation)
    }
}

fn gram(t: &[ProductVector; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| t[i].dot(&t[j]))
}

fn smallest_singular_value(t: &[ProductVector; 3]) -> f64 {
    let eig = SymmetricEigen::new(gram(t)).eigenvalues;
    eig.min().max(0.0).sqrt()
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Unit vector orthogonal to three tangents, oriented so det(t₁, t₂, t₃, N) > 0
/// in the J-oriented frame of the base point.
fn normal_from_tangents(t: &[ProductVector; 3]) -> ProductVector {
    let frame = t[0].base().frame();
    let rows = t.map(|v| v.frame_coords(&frame));
    let mut n = [0.0; 4];
    for (j, nj) in n.iter_mut().enumerate() {
        let mut minor = [[0.0; 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (k, x) in row.iter().enumerate() {
                if k != j {
                    minor[r][c] = *x;
                    c += 1;
                }
            }
        }
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        *nj = sign * det3(minor);
    }
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n = n.map(|x| x / len);
    ProductVector::from_frame_coords(&frame, &n)
}

/// Coordinate tangent vectors ∂Φ/∂uⁱ at `u`.
pub fn tangent_basis(imm: &Immersion, u: &[f64; 3]) -> Result<[ProductVector; 3]> {
    imm.check_domain(u)?;
    imm.checked_tangents(u)
}

/// Gram–Schmidt orthonormalization of the coordinate tangents.
pub fn orthonormal_tangent_basis(imm: &Immersion, u: &[f64; 3]) -> Result<[ProductVector; 3]> {
    let t = tangent_basis(imm, u)?;
    Ok(gram_schmidt(&t))
}

pub(crate) fn gram_schmidt(t: &[ProductVector; 3]) -> [ProductVector; 3] {
    let mut out = *t;
    for i in 0..3 {
        // Two passes keep the result orthonormal to rounding.
        for _ in 0..2 {
            for j in 0..i {
                let c = out[i].dot(&out[j]);
                out[i] = out[i] - out[j] * c;
            }
        }
        out[i] = out[i] * (1.0 / out[i].norm());
    }
    out
}

/// Oriented unit normal N = (N₁, N₂) at `u`.
pub fn unit_normal(imm: &Immersion, u: &[f64; 3]) -> Result<ProductVector> {
    imm.check_domain(u)?;
    imm.normal_at(u)
}

/// C = ⟨PN, N⟩ evaluated as (‖N₁‖² − ‖N₂‖²)/(‖N₁‖² + ‖N₂‖²), which is exactly ±1
/// whenever one component of N vanishes.
pub fn angle_of_normal(n: &ProductVector) -> f64 {
    let a = n.first.norm_squared();
    let b = n.second.norm_squared();
    (a - b) / (a + b)
}

/// The product angle function C and the tangent field V = PN − CN.
pub fn angle_function(imm: &Immersion, u: &[f64; 3]) -> Result<(f64, ProductVector)> {
    let n = unit_normal(imm, u)?;
    let c = angle_of_normal(&n);
    Ok((c, product_structure(&n) - n * c))
}

/// H, K, H_ij and ρ of a symmetric 3×3 shape operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeInvariants {
    pub h: f64,
    pub k: f64,
    pub h12: f64,
    pub h13: f64,
    pub h23: f64,
    pub rho: f64,
}

impl ShapeInvariants {
    /// Mean curvature is the trace (not the averaged trace); ρ = κ₁(1−C) + κ₂(1+C) + H² − ‖A‖².
    pub fn compute(a: &Matrix3<f64>, kappa1: f64, kappa2: f64, c: f64) -> Self {
        let hij = |i: usize, j: usize| a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(i, j)];
        let h = a.trace();
        let norm_sq = a.iter().map(|x| x * x).sum::<f64>();
        Self {
            h,
            k: a.determinant(),
            h12: hij(0, 1),
            h13: hij(0, 2),
            h23: hij(1, 2),
            rho: kappa1 * (1.0 - c) + kappa2 * (1.0 + c) + h * h - norm_sq,
        }
    }
}

/// Shape operator in a declared orthonormal tangent basis, with derived invariants.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeRecord {
    #[serde(skip)]
    pub basis: [ProductVector; 3],
    #[serde(skip)]
    pub normal: ProductVector,
    #[serde(serialize_with = "serialize_matrix")]
    pub a: Matrix3<f64>,
    /// max |A_ij − A_ji| before symmetrization.
    pub asymmetry: f64,
    pub c: f64,
    #[serde(flatten)]
    pub invariants: ShapeInvariants,
    pub space: ProductSpace,
}

fn serialize_matrix<S: serde::Serializer>(m: &Matrix3<f64>, s: S) -> Result<S::Ok, S::Error> {
    let rows: [[f64; 3]; 3] = [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]));
    rows.serialize(s)
}

impl ShapeRecord {
    pub fn principal_curvatures(&self) -> [f64; 3] {
        principal_curvatures(&self.a)
    }

    /// A acting on a tangent vector, returned as coordinates in `basis`.
    fn apply(&self, x: &ProductVector) -> (Vector3<f64>, Vector3<f64>) {
        let coords = Vector3::from_fn(|i, _| x.dot(&self.basis[i]));
        (coords, self.a * coords)
    }
}

/// Eigenvalues of a symmetric 3×3 matrix, descending.
pub fn principal_curvatures(a: &Matrix3<f64>) -> [f64; 3] {
    let mut ev: Vec<f64> = SymmetricEigen::new(*a)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    [ev[0], ev[1], ev[2]]
}

/// Embedding-coordinate derivative of N along parameter axis `axis`.
fn normal_derivative(imm: &Immersion, u: &[f64; 3], axis: usize) -> Result<([f64; 3], [f64; 3])> {
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let h = WEINGARTEN_STEP.max(WEINGARTEN_STEP * norm);
    let central = |step: f64| -> Result<([f64; 3], [f64; 3])> {
        let (mut up, mut dn) = (*u, *u);
        up[axis] += step;
        dn[axis] -= step;
        let (a, b) = (imm.normal_at(&up)?, imm.normal_at(&dn)?);
        let d = |x: &[f64; 3], y: &[f64; 3]| [0, 1, 2].map(|i| (x[i] - y[i]) / (2.0 * step));
        Ok((
            d(a.first.raw(), b.first.raw()),
            d(a.second.raw(), b.second.raw()),
        ))
    };
    let (coarse, fine) = (central(h)?, central(0.5 * h)?);
    let rich = |c: &[f64; 3], f: &[f64; 3]| [0, 1, 2].map(|i| (4.0 * f[i] - c[i]) / 3.0);
    Ok((rich(&coarse.0, &fine.0), rich(&coarse.1, &fine.1)))
}

/// Numeric Weingarten map A_ij = −⟨∇̄_{e_i} N, e_j⟩ in an orthonormal tangent basis.
pub fn shape_operator(
    imm: &Immersion,
    u: &[f64; 3],
    basis: &[ProductVector; 3],
) -> Result<ShapeRecord> {
    imm.check_domain(u)?;
    let tangents = imm.checked_tangents(u)?;
    let n = normal_from_tangents(&tangents) * imm.orientation;
    let base = tangents[0].base();
    for (i, e) in basis.iter().enumerate() {
        if !e.base().same_point(&base) {
            return Err(GeoError::Domain(
                "shape operator basis is not based at Φ(u)".into(),
            ));
        }
        if e.dot(&n).abs() > BASIS_TOL {
            return Err(GeoError::Domain(format!(
                "basis vector {i} is not tangent to the hypersurface"
            )));
        }
        for (j, f) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            if (e.dot(f) - want).abs() > BASIS_TOL {
                return Err(GeoError::Domain(
                    "shape operator basis is not orthonormal".into(),
                ));
            }
        }
    }

    // e_i = Σ_a B_ai ∂_a
    let g = gram(&tangents);
    let m = Matrix3::from_fn(|a, i| tangents[a].dot(&basis[i]));
    let b = g
        .try_inverse()
        .ok_or(GeoError::DegeneratePoint { u: *u, sigma: 0.0 })?
        * m;

    let space = imm.space;
    let dn = [
        normal_derivative(imm, u, 0)?,
        normal_derivative(imm, u, 1)?,
        normal_derivative(imm, u, 2)?,
    ];
    let pair = |d: &([f64; 3], [f64; 3]), e: &ProductVector| {
        pairing(space.first, &d.0, e.first.raw()) + pairing(space.second, &d.1, e.second.raw())
    };
    // W[a][j] = ⟨∂_a N, e_j⟩
    let w = Matrix3::from_fn(|a, j| pair(&dn[a], &basis[j]));
    let raw = -(b.transpose() * w);
    let asymmetry = (raw - raw.transpose()).abs().max();
    let a = (raw + raw.transpose()) * 0.5;
    let c = angle_of_normal(&n);
    let (k1, k2) = space.kappas();
    Ok(ShapeRecord {
        basis: *basis,
        normal: n,
        a,
        asymmetry,
        c,
        invariants: ShapeInvariants::compute(&a, k1, k2, c),
        space,
    })
}

/// Shape operator in the Gram–Schmidt basis of the coordinate tangents.
pub fn shape_operator_default(imm: &Immersion, u: &[f64; 3]) -> Result<ShapeRecord> {
    let basis = orthonormal_tangent_basis(imm, u)?;
    shape_operator(imm, u, &basis)
}

/// Ricci curvature Ric(X, X) of Σ for X tangent to Σ:
///
/// κ₁/4 [(1−C)⟨X,X⟩ + (1−C)⟨X,PX⟩ + ⟨PX,N⟩²] + κ₂/4 [(1+C)⟨X,X⟩ − (1+C)⟨X,PX⟩ + ⟨PX,N⟩²]
/// + H⟨AX,X⟩ − ⟨AX,AX⟩.
pub fn ricci(x: &ProductVector, rec: &ShapeRecord, n: &ProductVector) -> f64 {
    let (k1, k2) = rec.space.kappas();
    let c = rec.c;
    let px = product_structure(x);
    let xx = x.dot(x);
    let xpx = x.dot(&px);
    let pxn = px.dot(n);
    let (coords, ax) = rec.apply(x);
    let first = k1 / 4.0 * ((1.0 - c) * xx + (1.0 - c) * xpx + pxn * pxn);
    let second = k2 / 4.0 * ((1.0 + c) * xx - (1.0 + c) * xpx + pxn * pxn);
    first + second + rec.invariants.h * ax.dot(&coords) - ax.dot(&ax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::product_exp;
    use crate::spaceform::{Kappa, ModelPoint};

    /// Σ = (great circle x₃ = 0 of 𝕊²) × ℝ², parametrized by (s, a, b).
    fn equator_times_plane() -> Immersion {
        let space = ProductSpace::new(Kappa::Spherical, Kappa::Flat);
        Immersion::new(space, ParamBox::cube(1.0), |u| {
            Ok(ProductPoint::new(
                ModelPoint::project(Kappa::Spherical, [u[0].cos(), u[0].sin(), 0.0]),
                ModelPoint::project(Kappa::Flat, [u[1], u[2], 0.0]),
            ))
        })
    }

    #[test]
    fn grid_has_endpoints() {
        let g = ParamBox::cube(1.0).grid(5);
        assert_eq!(g.len(), 125);
        assert_eq!(g[0], [-1.0; 3]);
        assert_eq!(g[124], [1.0; 3]);
        assert_eq!(ParamBox::cube(1.0).grid(1), vec![[0.0; 3]]);
    }

    #[test]
    fn affine_graph_has_constant_basis() {
        let space = ProductSpace::new(Kappa::Flat, Kappa::Flat);
        let imm = Immersion::new(space, ParamBox::cube(2.0), |u| {
            Ok(ProductPoint::new(
                ModelPoint::project(Kappa::Flat, [u[0], u[1], 0.0]),
                ModelPoint::project(Kappa::Flat, [u[2], 2.0 * u[0] - u[1], 0.0]),
            ))
        });
        let t0 = tangent_basis(&imm, &[0.0; 3]).unwrap();
        let t1 = tangent_basis(&imm, &[1.2, -0.7, 0.4]).unwrap();
        for a in 0..3 {
            for k in 0..2 {
                assert!((t0[a].first.raw()[k] - t1[a].first.raw()[k]).abs() < 1e-9);
                assert!((t0[a].second.raw()[k] - t1[a].second.raw()[k]).abs() < 1e-9);
            }
        }
        assert!((t0[0].second.raw()[1] - 2.0).abs() < 1e-9);
        // N ⟂ all three, unit length.
        let n = unit_normal(&imm, &[0.3, 0.1, -0.2]).unwrap();
        assert!((n.norm() - 1.0).abs() < 1e-12);
        for t in &t1 {
            assert!(t.dot(&n).abs() < 1e-9);
        }
    }

    #[test]
    fn curve_times_factor_normal_and_angle() {
        let imm = equator_times_plane();
        let n = unit_normal(&imm, &[0.0; 3]).unwrap();
        assert!((n.first.raw()[2].abs() - 1.0).abs() < 1e-12);
        assert!(n.second.is_zero());
        let (c, v) = angle_function(&imm, &[0.5, -0.2, 0.9]).unwrap();
        assert_eq!(c, 1.0);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn factor_times_curve_has_angle_minus_one() {
        let space = ProductSpace::new(Kappa::Hyperbolic, Kappa::Flat);
        let imm = Immersion::new(space, ParamBox::cube(1.0), |u| {
            Ok(ProductPoint::new(
                ModelPoint::project(
                    Kappa::Hyperbolic,
                    [
                        u[0].cosh() * u[1].cosh(),
                        u[0].sinh() * u[1].cosh(),
                        u[1].sinh(),
                    ],
                ),
                ModelPoint::project(Kappa::Flat, [u[2], 0.0, 0.0]),
            ))
        });
        let (c, v) = angle_function(&imm, &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(c, -1.0);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn totally_geodesic_slice_has_zero_shape_operator() {
        let imm = equator_times_plane();
        let rec = shape_operator_default(&imm, &[0.3, 0.2, -0.4]).unwrap();
        assert!(rec.a.abs().max() < 1e-9);
        assert!(rec.invariants.h.abs() < 1e-9);
        assert!(rec.invariants.k.abs() < 1e-12);
    }

    #[test]
    fn degenerate_point_is_reported() {
        let space = ProductSpace::new(Kappa::Flat, Kappa::Flat);
        let imm = Immersion::new(space, ParamBox::cube(1.0), |u| {
            Ok(ProductPoint::new(
                ModelPoint::project(Kappa::Flat, [u[0], u[1], 0.0]),
                ModelPoint::project(Kappa::Flat, [u[1], u[2] * u[2] * u[2], 0.0]),
            ))
        });
        assert!(matches!(
            unit_normal(&imm, &[0.0, 0.0, 0.0]),
            Err(GeoError::DegeneratePoint { .. })
        ));
        assert!(unit_normal(&imm, &[0.0, 0.0, 0.5]).is_ok());
    }

    #[test]
    fn out_of_domain_parameters_are_rejected() {
        let imm = equator_times_plane();
        assert!(matches!(
            tangent_basis(&imm, &[1.5, 0.0, 0.0]),
            Err(GeoError::Domain(_))
        ));
    }

    #[test]
    fn shape_operator_rejects_non_orthonormal_basis() {
        let imm = equator_times_plane();
        let u = [0.1, 0.1, 0.1];
        let mut b = orthonormal_tangent_basis(&imm, &u).unwrap();
        b[0] = b[0] * 2.0;
        assert!(shape_operator(&imm, &u, &b).is_err());
    }

    #[test]
    fn flowed_point_matches_manual_exp() {
        let imm = equator_times_plane();
        let u = [0.2, 0.0, 0.0];
        let p = imm.eval(&u).unwrap();
        let n = unit_normal(&imm, &u).unwrap();
        let q = product_exp(&p, &n, 0.3);
        assert!((q.first.constraint_residual()) < 1e-14);
    }
}
