//! The 2-dimensional model spaces M²κ for κ ∈ {−1, 0, 1}.
//!
//! Each space is represented in its standard embedding: the plane ℝ² for
//! κ = 0, the unit sphere in Euclidean ℝ³ for κ = 1, and the upper sheet of
//! the hyperboloid −x₁² + x₂² + x₃² = −1 in Minkowski space ℝ³₁ for κ = −1.
//! Points and vectors always carry three coordinates internally; the third
//! coordinate of a planar point or vector is identically zero.
//!
//! Geodesics, velocities and parallel transport are closed-form. Velocities of
//! any norm are accepted, including the zero vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};

/// Residual accepted when constructing a point from user coordinates.
pub const QUADRIC_TOL: f64 = 1e-8;
/// Residual accepted when constructing a tangent vector; smaller violations are projected away.
pub const TANGENCY_TOL: f64 = 1e-8;
/// Base points closer than this (relative) are treated as the same point.
pub const SAME_POINT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kappa {
    Hyperbolic,
    Flat,
    Spherical,
}

impl Kappa {
    pub const ALL: [Kappa; 3] = [Kappa::Hyperbolic, Kappa::Flat, Kappa::Spherical];

    pub fn from_sign(k: i32) -> Option<Self> {
        match k {
            -1 => Some(Kappa::Hyperbolic),
            0 => Some(Kappa::Flat),
            1 => Some(Kappa::Spherical),
            _ => None,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Kappa::Hyperbolic => -1,
            Kappa::Flat => 0,
            Kappa::Spherical => 1,
        }
    }

    pub fn value(self) -> f64 {
        self.sign() as f64
    }

    /// Number of embedding coordinates.
    pub fn dim(self) -> usize {
        match self {
            Kappa::Flat => 2,
            _ => 3,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kappa::Hyperbolic => "H2",
            Kappa::Flat => "R2",
            Kappa::Spherical => "S2",
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Bilinear form of the embedding space: Euclidean for κ ∈ {0, 1},
/// Lorentzian −a₁b₁ + a₂b₂ + a₃b₃ for κ = −1.
pub fn pairing(kappa: Kappa, a: &[f64; 3], b: &[f64; 3]) -> f64 {
    match kappa {
        Kappa::Hyperbolic => -a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
        Kappa::Flat => a[0] * b[0] + a[1] * b[1],
        Kappa::Spherical => a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
    }
}

/// Euclidean cross product.
pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Lorentzian cross product a ⊠ b = (a₃b₂ − a₂b₃, a₃b₁ − a₁b₃, a₁b₂ − a₂b₁).
pub fn lorentz_cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[2] * b[1] - a[1] * b[2],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn inf_norm(a: &[f64; 3]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn lincomb(a: f64, x: &[f64; 3], b: f64, y: &[f64; 3]) -> [f64; 3] {
    [
        a * x[0] + b * y[0],
        a * x[1] + b * y[1],
        a * x[2] + b * y[2],
    ]
}

fn widen(kappa: Kappa, coords: &[f64]) -> Result<[f64; 3]> {
    if coords.len() != kappa.dim() {
        return Err(GeoError::Domain(format!(
            "{} expects {} coordinates, got {}",
            kappa,
            kappa.dim(),
            coords.len()
        )));
    }
    let mut out = [0.0; 3];
    out[..coords.len()].copy_from_slice(coords);
    Ok(out)
}

/// A point of M²κ in its standard embedding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    kappa: Kappa,
    coords: [f64; 3],
}

impl ModelPoint {
    /// Validates the quadric constraint and re-projects onto it.
    pub fn new(kappa: Kappa, coords: &[f64]) -> Result<Self> {
        let raw = widen(kappa, coords)?;
        let residual = constraint_residual(kappa, &raw);
        if !residual.is_finite() || residual > QUADRIC_TOL * (1.0 + inf_norm(&raw).powi(2)) {
            return Err(GeoError::OffManifold { residual });
        }
        if kappa == Kappa::Hyperbolic && raw[0] <= 0.0 {
            return Err(GeoError::OffManifold {
                residual: f64::INFINITY,
            });
        }
        Ok(Self::project(kappa, raw))
    }

    /// Re-normalizes onto the quadric without validation: divides by √|q(p)| for κ = ±1.
    pub fn project(kappa: Kappa, mut coords: [f64; 3]) -> Self {
        match kappa {
            Kappa::Flat => coords[2] = 0.0,
            Kappa::Spherical | Kappa::Hyperbolic => {
                let q = pairing(kappa, &coords, &coords).abs().sqrt();
                if q > 0.0 {
                    coords.iter_mut().for_each(|x| *x /= q);
                }
            }
        }
        Self { kappa, coords }
    }

    pub fn origin(kappa: Kappa) -> Self {
        match kappa {
            Kappa::Flat => Self {
                kappa,
                coords: [0.0; 3],
            },
            _ => Self {
                kappa,
                coords: [1.0, 0.0, 0.0],
            },
        }
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    /// Embedding coordinates (2 for the plane, 3 otherwise).
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.kappa.dim()]
    }

    pub fn raw(&self) -> &[f64; 3] {
        &self.coords
    }

    pub fn constraint_residual(&self) -> f64 {
        constraint_residual(self.kappa, &self.coords)
    }

    pub fn same_point(&self, other: &ModelPoint) -> bool {
        if self.kappa != other.kappa {
            return false;
        }
        let scale = 1.0_f64.max(inf_norm(&self.coords));
        self.coords
            .iter()
            .zip(other.coords.iter())
            .all(|(a, b)| (a - b).abs() <= SAME_POINT_TOL * scale)
    }
}

fn constraint_residual(kappa: Kappa, p: &[f64; 3]) -> f64 {
    match kappa {
        Kappa::Flat => p[2].abs(),
        Kappa::Spherical => (pairing(kappa, p, p) - 1.0).abs(),
        Kappa::Hyperbolic => (pairing(kappa, p, p) + 1.0).abs(),
    }
}

/// A tangent vector to M²κ at `base`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelVector {
    base: ModelPoint,
    coords: [f64; 3],
}

impl ModelVector {
    /// Rejects tangency violations above [`TANGENCY_TOL`] and projects smaller ones away.
    pub fn new(base: ModelPoint, coords: &[f64]) -> Result<Self> {
        let raw = widen(base.kappa, coords)?;
        Self::from_raw(base, raw)
    }

    pub(crate) fn from_raw(base: ModelPoint, raw: [f64; 3]) -> Result<Self> {
        let residual = tangency_residual(&base, &raw);
        if !residual.is_finite() || residual > TANGENCY_TOL {
            return Err(GeoError::NotTangent { residual });
        }
        Ok(Self::projected(base, raw))
    }

    /// Orthogonal projection of an arbitrary embedding vector onto T_pM.
    pub fn projected(base: ModelPoint, mut raw: [f64; 3]) -> Self {
        let p = base.coords;
        match base.kappa {
            Kappa::Flat => raw[2] = 0.0,
            Kappa::Spherical => {
                let a = pairing(base.kappa, &raw, &p);
                raw = lincomb(1.0, &raw, -a, &p);
            }
            Kappa::Hyperbolic => {
                let a = pairing(base.kappa, &raw, &p);
                raw = lincomb(1.0, &raw, a, &p);
            }
        }
        Self { base, coords: raw }
    }

    pub fn zero(base: ModelPoint) -> Self {
        Self {
            base,
            coords: [0.0; 3],
        }
    }

    pub fn kappa(&self) -> Kappa {
        self.base.kappa
    }

    pub fn base(&self) -> &ModelPoint {
        &self.base
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.base.kappa.dim()]
    }

    pub fn raw(&self) -> &[f64; 3] {
        &self.coords
    }

    /// ⟨self, other⟩ without base-point checks.
    pub fn dot(&self, other: &ModelVector) -> f64 {
        pairing(self.kappa(), &self.coords, &other.coords)
    }

    pub fn norm_squared(&self) -> f64 {
        // The form is positive definite on tangent vectors; clamp rounding noise.
        self.dot(self).max(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| *x == 0.0)
    }
}

fn tangency_residual(base: &ModelPoint, v: &[f64; 3]) -> f64 {
    match base.kappa {
        Kappa::Flat => v[2].abs(),
        k => pairing(k, &base.coords, v).abs() / (1.0 + inf_norm(&base.coords) * inf_norm(v)),
    }
}

impl Add for ModelVector {
    type Output = ModelVector;
    fn add(self, rhs: ModelVector) -> ModelVector {
        debug_assert!(self.base.same_point(&rhs.base));
        ModelVector {
            base: self.base,
            coords: lincomb(1.0, &self.coords, 1.0, &rhs.coords),
        }
    }
}

impl Sub for ModelVector {
    type Output = ModelVector;
    fn sub(self, rhs: ModelVector) -> ModelVector {
        debug_assert!(self.base.same_point(&rhs.base));
        ModelVector {
            base: self.base,
            coords: lincomb(1.0, &self.coords, -1.0, &rhs.coords),
        }
    }
}

impl Mul<f64> for ModelVector {
    type Output = ModelVector;
    fn mul(self, s: f64) -> ModelVector {
        ModelVector {
            base: self.base,
            coords: self.coords.map(|x| x * s),
        }
    }
}

impl Neg for ModelVector {
    type Output = ModelVector;
    fn neg(self) -> ModelVector {
        self * -1.0
    }
}

fn check_same_base(u: &ModelVector, v: &ModelVector) -> Result<()> {
    if u.kappa() != v.kappa() {
        return Err(GeoError::Domain(format!(
            "mismatched curvature tags {} and {}",
            u.kappa(),
            v.kappa()
        )));
    }
    if !u.base.same_point(&v.base) {
        return Err(GeoError::Domain(
            "tangent vectors live at different base points".into(),
        ));
    }
    Ok(())
}

/// The canonical metric of M²κ on two tangent vectors at one base point.
pub fn metric(kappa: Kappa, u: &ModelVector, v: &ModelVector) -> Result<f64> {
    check_same_base(u, v)?;
    if u.kappa() != kappa {
        return Err(GeoError::Domain(format!(
            "vectors belong to {}, not {}",
            u.kappa(),
            kappa
        )));
    }
    Ok(u.dot(v))
}

/// J on the model space: rotation by π/2 in the plane, p ∧ v on the sphere,
/// p ⊠ v on the hyperboloid.
pub fn complex_structure(p: &ModelPoint, v: &ModelVector) -> Result<ModelVector> {
    if !p.same_point(&v.base) {
        return Err(GeoError::Domain(
            "complex structure applied at a foreign base point".into(),
        ));
    }
    Ok(complex_structure_at_base(v))
}

pub(crate) fn complex_structure_at_base(v: &ModelVector) -> ModelVector {
    let p = &v.base.coords;
    let x = &v.coords;
    let coords = match v.kappa() {
        Kappa::Flat => [-x[1], x[0], 0.0],
        Kappa::Spherical => cross(p, x),
        Kappa::Hyperbolic => lorentz_cross(p, x),
    };
    ModelVector {
        base: v.base,
        coords,
    }
}

/// Point at parameter `l` on the geodesic through `p` with initial velocity `v`.
pub fn exp_map(p: &ModelPoint, v: &ModelVector, l: f64) -> ModelPoint {
    debug_assert!(p.same_point(&v.base));
    let theta = v.norm();
    let kappa = p.kappa;
    if theta == 0.0 || l == 0.0 {
        return *p;
    }
    let coords = match kappa {
        Kappa::Flat => lincomb(1.0, &p.coords, l, &v.coords),
        Kappa::Spherical => {
            let a = l * theta;
            lincomb(a.cos(), &p.coords, a.sin() / theta, &v.coords)
        }
        Kappa::Hyperbolic => {
            let a = l * theta;
            lincomb(a.cosh(), &p.coords, a.sinh() / theta, &v.coords)
        }
    };
    ModelPoint::project(kappa, coords)
}

/// Velocity at parameter `l` of the geodesic through `p` with initial velocity `v`.
pub fn geodesic_velocity(p: &ModelPoint, v: &ModelVector, l: f64) -> ModelVector {
    let q = exp_map(p, v, l);
    let theta = v.norm();
    if theta == 0.0 {
        return ModelVector::zero(q);
    }
    let a = l * theta;
    let coords = match p.kappa {
        Kappa::Flat => v.coords,
        Kappa::Spherical => lincomb(-theta * a.sin(), &p.coords, a.cos(), &v.coords),
        Kappa::Hyperbolic => lincomb(theta * a.sinh(), &p.coords, a.cosh(), &v.coords),
    };
    ModelVector::projected(q, coords)
}

/// Parallel transport of `w` along the geodesic t ↦ exp_map(p, v, t) from 0 to `l`.
///
/// The component of `w` orthogonal to the plane of motion is constant in the
/// embedding; the component along `v` follows the geodesic velocity.
pub fn parallel_transport(p: &ModelPoint, v: &ModelVector, l: f64, w: &ModelVector) -> ModelVector {
    let q = exp_map(p, v, l);
    let theta = v.norm();
    if theta == 0.0 {
        return ModelVector::projected(q, w.coords);
    }
    let along = w.dot(v) / theta;
    let perp = lincomb(1.0, &w.coords, -along / theta, &v.coords);
    let vel = geodesic_velocity(p, v, l);
    ModelVector::projected(q, lincomb(1.0, &perp, along / theta, &vel.coords))
}

/// A J-oriented orthonormal basis (t, Jt) of T_pM. Depends only on `p`.
pub fn tangent_frame(p: &ModelPoint) -> [ModelVector; 2] {
    let t = match p.kappa {
        Kappa::Flat => ModelVector {
            base: *p,
            coords: [1.0, 0.0, 0.0],
        },
        Kappa::Spherical => {
            let c = &p.coords;
            let k = (0..3)
                .min_by(|&i, &j| c[i].abs().total_cmp(&c[j].abs()))
                .unwrap_or(0);
            let mut e = [0.0; 3];
            e[k] = 1.0;
            let t = ModelVector::projected(*p, e);
            t * (1.0 / t.norm())
        }
        Kappa::Hyperbolic => {
            let t = ModelVector::projected(*p, [0.0, 1.0, 0.0]);
            t * (1.0 / t.norm())
        }
    };
    [t, complex_structure_at_base(&t)]
}
