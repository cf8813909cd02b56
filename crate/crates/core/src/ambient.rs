//! The product manifold M²κ₁ × M²κ₂ with its product structure P, the two
//! complex structures J₁ = (J, J) and J₂ = (J, −J), and its curvature tensor.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::spaceform::{
    complex_structure_at_base, exp_map, geodesic_velocity, parallel_transport, tangent_frame,
    Kappa, ModelPoint, ModelVector,
};

/// The pair of curvature tags (κ₁, κ₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSpace {
    pub first: Kappa,
    pub second: Kappa,
}

impl ProductSpace {
    pub fn new(first: Kappa, second: Kappa) -> Self {
        Self { first, second }
    }

    pub fn kappas(&self) -> (f64, f64) {
        (self.first.value(), self.second.value())
    }

    pub fn origin(&self) -> ProductPoint {
        ProductPoint::new(
            ModelPoint::origin(self.first),
            ModelPoint::origin(self.second),
        )
    }

    pub fn label(&self) -> String {
        format!("{}x{}", self.first, self.second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub first: ModelPoint,
    pub second: ModelPoint,
}

impl ProductPoint {
    pub fn new(first: ModelPoint, second: ModelPoint) -> Self {
        Self { first, second }
    }

    pub fn space(&self) -> ProductSpace {
        ProductSpace::new(self.first.kappa(), self.second.kappa())
    }

    pub fn same_point(&self, other: &ProductPoint) -> bool {
        self.first.same_point(&other.first) && self.second.same_point(&other.second)
    }

    /// Orthonormal frame ((t₁,0), (Jt₁,0), (0,t₂), (0,Jt₂)) of the 4-dimensional tangent space.
    pub fn frame(&self) -> [ProductVector; 4] {
        let [a, ja] = tangent_frame(&self.first);
        let [b, jb] = tangent_frame(&self.second);
        let z1 = ModelVector::zero(self.first);
        let z2 = ModelVector::zero(self.second);
        [
            ProductVector::new(a, z2),
            ProductVector::new(ja, z2),
            ProductVector::new(z1, b),
            ProductVector::new(z1, jb),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductVector {
    pub first: ModelVector,
    pub second: ModelVector,
}

impl ProductVector {
    pub fn new(first: ModelVector, second: ModelVector) -> Self {
        Self { first, second }
    }

    pub fn zero(base: &ProductPoint) -> Self {
        Self::new(
            ModelVector::zero(base.first),
            ModelVector::zero(base.second),
        )
    }

    pub fn base(&self) -> ProductPoint {
        ProductPoint::new(*self.first.base(), *self.second.base())
    }

    /// Product metric ⟨X₁,Y₁⟩ + ⟨X₂,Y₂⟩ without base-point checks.
    pub fn dot(&self, other: &ProductVector) -> f64 {
        self.first.dot(&other.first) + self.second.dot(&other.second)
    }

    pub fn norm(&self) -> f64 {
        (self.first.norm_squared() + self.second.norm_squared()).sqrt()
    }

    /// Coordinates in [`ProductPoint::frame`] of the base point.
    pub fn frame_coords(&self, frame: &[ProductVector; 4]) -> [f64; 4] {
        frame.map(|e| self.dot(&e))
    }

    pub fn from_frame_coords(frame: &[ProductVector; 4], c: &[f64; 4]) -> Self {
        frame[0] * c[0] + frame[1] * c[1] + frame[2] * c[2] + frame[3] * c[3]
    }
}

impl Add for ProductVector {
    type Output = ProductVector;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.first + rhs.first, self.second + rhs.second)
    }
}

impl Sub for ProductVector {
    type Output = ProductVector;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.first - rhs.first, self.second - rhs.second)
    }
}

impl Mul<f64> for ProductVector {
    type Output = ProductVector;
    fn mul(self, s: f64) -> Self {
        Self::new(self.first * s, self.second * s)
    }
}

impl Neg for ProductVector {
    type Output = ProductVector;
    fn neg(self) -> Self {
        Self::new(-self.first, -self.second)
    }
}

/// Product metric with base-point validation.
pub fn inner(x: &ProductVector, y: &ProductVector) -> Result<f64> {
    if !x.base().same_point(&y.base()) {
        return Err(GeoError::Domain(
            "product vectors live at different base points".into(),
        ));
    }
    Ok(x.dot(y))
}

/// P(X₁, X₂) = (X₁, −X₂).
pub fn product_structure(x: &ProductVector) -> ProductVector {
    ProductVector::new(x.first, -x.second)
}

/// (J₁X, J₂X) = ((JX₁, JX₂), (JX₁, −JX₂)).
pub fn complex_structures(x: &ProductVector) -> (ProductVector, ProductVector) {
    let j1 = complex_structure_at_base(&x.first);
    let j2 = complex_structure_at_base(&x.second);
    (ProductVector::new(j1, j2), ProductVector::new(j1, -j2))
}

/// Curvature tensor R̄(X, Y, Z, W) of the product metric, evaluated term by term as
///
/// κ₁/4 {⟨X,PW+W⟩⟨Y,PZ+Z⟩ − ⟨X,PZ+Z⟩⟨Y,PW+W⟩} + κ₂/4 {⟨X,PW−W⟩⟨Y,PZ−Z⟩ − ⟨X,PZ−Z⟩⟨Y,PW−W⟩}.
///
/// With this convention R̄(X, Y, Y, X) is the sectional curvature of an orthonormal pair.
pub fn curvature_tensor(
    x: &ProductVector,
    y: &ProductVector,
    z: &ProductVector,
    w: &ProductVector,
) -> Result<f64> {
    let base = x.base();
    if [y, z, w].iter().any(|v| !v.base().same_point(&base)) {
        return Err(GeoError::Domain(
            "curvature tensor arguments at different base points".into(),
        ));
    }
    let (k1, k2) = base.space().kappas();
    let pw = product_structure(w);
    let pz = product_structure(z);
    let (pw_plus, pz_plus) = (pw + *w, pz + *z);
    let (pw_minus, pz_minus) = (pw - *w, pz - *z);
    let first = x.dot(&pw_plus) * y.dot(&pz_plus) - x.dot(&pz_plus) * y.dot(&pw_plus);
    let second = x.dot(&pw_minus) * y.dot(&pz_minus) - x.dot(&pz_minus) * y.dot(&pw_minus);
    Ok(k1 / 4.0 * first + k2 / 4.0 * second)
}

/// Componentwise geodesic flow: (exp(l X₁), exp~(l X₂)).
pub fn product_exp(p: &ProductPoint, x: &ProductVector, l: f64) -> ProductPoint {
    ProductPoint::new(
        exp_map(&p.first, &x.first, l),
        exp_map(&p.second, &x.second, l),
    )
}

/// Velocity of the product geodesic at parameter `l`.
pub fn product_velocity(p: &ProductPoint, x: &ProductVector, l: f64) -> ProductVector {
    ProductVector::new(
        geodesic_velocity(&p.first, &x.first, l),
        geodesic_velocity(&p.second, &x.second, l),
    )
}

/// Parallel transport of `w` along the product geodesic with initial velocity `x`.
pub fn product_transport(
    p: &ProductPoint,
    x: &ProductVector,
    l: f64,
    w: &ProductVector,
) -> ProductVector {
    ProductVector::new(
        parallel_transport(&p.first, &x.first, l, &w.first),
        parallel_transport(&p.second, &x.second, l, &w.second),
    )
}
