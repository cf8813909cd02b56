//! Parallel hypersurfaces and the Jacobi-field matrix Q.
//!
//! Along the normal geodesic γ_p(l) of a point of Σ with C² < 1, the frame
//! E₁ ∥ V, E₂ ∝ J₁N + J₂N, E₃ ∝ J₁N − J₂N is parallel, and the pushforward of
//! Eᵢ under Φ_l is Σⱼ Q_ji Eⱼˡ. The entries of Q are built from the shape
//! operator of Σ in that frame and the stability functions S_δ, C_δ with
//! δ₁ = κ₁(1+C)/2 on E₂ and δ₂ = κ₂(1−C)/2 on E₃. The parallel hypersurface
//! then has shape operator −Q′Q⁻¹ and mean curvature −(det Q)′/det Q.

pub mod derivatives;
pub mod series;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::ambient::{
    complex_structures, product_exp, product_transport, product_velocity, ProductVector,
};
use crate::error::{GeoError, Result};
use crate::hypersurface::{Immersion, ShapeInvariants};
use crate::scalar::{int, Scalar};
use crate::spaceform::{tangent_frame, Kappa, ModelVector};

pub use derivatives::{
    derivative_display, detq_derivative_formula, DerivativeInputs, FORMULA_ORDERS,
};
pub use series::{stability_series_at, TaylorSeries, DEFAULT_ORDER};

/// The adapted frame is refused when 1 − C² falls below this.
pub const FRAME_EPS: f64 = 1e-6;
/// |det Q| below this is treated as a focal point.
pub const FOCAL_EPS: f64 = 1e-10;

/// (κ₁, κ₂, C) together with δ₁ = κ₁(1+C)/2 and δ₂ = κ₂(1−C)/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    kappa1: Kappa,
    kappa2: Kappa,
    c: f64,
    delta1: f64,
    delta2: f64,
}

impl CaseParams {
    pub fn new(kappa1: Kappa, kappa2: Kappa, c: f64) -> Result<Self> {
        if !c.is_finite() || c.abs() > 1.0 + 1e-12 {
            return Err(GeoError::Domain(format!(
                "product angle C = {c} outside [-1, 1]"
            )));
        }
        Ok(Self {
            kappa1,
            kappa2,
            c,
            delta1: kappa1.value() * (1.0 + c) / 2.0,
            delta2: kappa2.value() * (1.0 - c) / 2.0,
        })
    }

    pub fn kappa1(&self) -> Kappa {
        self.kappa1
    }

    pub fn kappa2(&self) -> Kappa {
        self.kappa2
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    pub fn delta2(&self) -> f64 {
        self.delta2
    }
}

/// Shape operator in the adapted frame E₁, E₂, E₃ and its invariants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameShape {
    pub a: Matrix3<f64>,
    pub invariants: ShapeInvariants,
}

impl FrameShape {
    /// ρ is always derived from A and C, never supplied.
    pub fn new(a: Matrix3<f64>, cp: &CaseParams) -> Result<Self> {
        let asym = (a - a.transpose()).abs().max();
        if !(asym <= 1e-8) {
            return Err(GeoError::Domain(format!(
                "shape operator is not symmetric (defect {asym:e})"
            )));
        }
        let invariants = ShapeInvariants::compute(&a, cp.kappa1.value(), cp.kappa2.value(), cp.c);
        Ok(Self { a, invariants })
    }

    fn entries<T: Scalar>(&self) -> [[T; 3]; 3] {
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| T::from_f64(self.a[(i, j)]).expect("finite entry")))
    }
}

/// (S_δ(l), C_δ(l)): (l, 1) for δ = 0; (sinh(l√−δ)/√−δ, cosh(l√−δ)) for δ < 0;
/// (sin(l√δ)/√δ, cos(l√δ)) for δ > 0.
pub fn stability_functions(delta: f64, l: f64) -> (f64, f64) {
    if delta == 0.0 {
        (l, 1.0)
    } else if delta < 0.0 {
        let r = (-delta).sqrt();
        ((l * r).sinh() / r, (l * r).cosh())
    } else {
        let r = delta.sqrt();
        ((l * r).sin() / r, (l * r).cos())
    }
}

/// E₁ = V/√(1−C²), E₂ = (J₁N+J₂N)/√(2(1+C)), E₃ = (J₁N−J₂N)/√(2(1−C)).
pub fn adapted_frame(n: &ProductVector, c: f64, v: &ProductVector) -> Result<[ProductVector; 3]> {
    let gap = 1.0 - c * c;
    if !(gap >= FRAME_EPS) {
        return Err(GeoError::FrameDegenerate { gap });
    }
    let (j1n, j2n) = complex_structures(n);
    Ok([
        *v * (1.0 / gap.sqrt()),
        (j1n + j2n) * (1.0 / (2.0 * (1.0 + c)).sqrt()),
        (j1n - j2n) * (1.0 / (2.0 * (1.0 - c)).sqrt()),
    ])
}

/// The adapted frame, completed at C² = 1 where V vanishes.
///
/// For C ≈ 1 the normal lies in the first factor: E₂ = (JN₁, 0) as usual and
/// E₁, E₃ are (0, t), (0, Jt) for the fixed tangent frame of the second factor.
/// C ≈ −1 is symmetric. Both completions carry δ = 0, which is what Q assigns
/// to them, and depend only on the base point of the stationary factor, so they
/// are parallel along the normal geodesic.
pub fn extended_frame(n: &ProductVector, c: f64, v: &ProductVector) -> [ProductVector; 3] {
    if let Ok(frame) = adapted_frame(n, c, v) {
        return frame;
    }
    let (j1n, j2n) = complex_structures(n);
    let base = n.base();
    if c > 0.0 {
        let [t, jt] = tangent_frame(&base.second);
        let z = ModelVector::zero(base.first);
        [
            ProductVector::new(z, t),
            (j1n + j2n) * (1.0 / (2.0 * (1.0 + c)).sqrt()),
            ProductVector::new(z, jt),
        ]
    } else {
        let [t, jt] = tangent_frame(&base.first);
        let z = ModelVector::zero(base.second);
        [
            ProductVector::new(t, z),
            ProductVector::new(jt, z),
            (j1n - j2n) * (1.0 / (2.0 * (1.0 - c)).sqrt()),
        ]
    }
}

/// Q(l) with rows (1−lA₁₁, −lA₁₂, −lA₁₃), (−A₁₂S₁, C₁−A₂₂S₁, −A₂₃S₁), (−A₁₃S₂, −A₂₃S₂, C₂−A₃₃S₂).
pub fn q_matrix(fs: &FrameShape, cp: &CaseParams, l: f64) -> Matrix3<f64> {
    let a = &fs.a;
    let (s1, c1) = stability_functions(cp.delta1, l);
    let (s2, c2) = stability_functions(cp.delta2, l);
    Matrix3::new(
        1.0 - l * a[(0, 0)],
        -l * a[(0, 1)],
        -l * a[(0, 2)],
        -a[(0, 1)] * s1,
        c1 - a[(1, 1)] * s1,
        -a[(1, 2)] * s1,
        -a[(0, 2)] * s2,
        -a[(1, 2)] * s2,
        c2 - a[(2, 2)] * s2,
    )
}

/// Q′(l), entrywise, using S′ = C and C′ = −δS.
pub fn q_matrix_derivative(fs: &FrameShape, cp: &CaseParams, l: f64) -> Matrix3<f64> {
    let a = &fs.a;
    let (s1, c1) = stability_functions(cp.delta1, l);
    let (s2, c2) = stability_functions(cp.delta2, l);
    let (ds1, dc1) = (c1, -cp.delta1 * s1);
    let (ds2, dc2) = (c2, -cp.delta2 * s2);
    Matrix3::new(
        -a[(0, 0)],
        -a[(0, 1)],
        -a[(0, 2)],
        -a[(0, 1)] * ds1,
        dc1 - a[(1, 1)] * ds1,
        -a[(1, 2)] * ds1,
        -a[(0, 2)] * ds2,
        -a[(1, 2)] * ds2,
        dc2 - a[(2, 2)] * ds2,
    )
}

/// det Q = (1−lA₁₁)C₁C₂ + (−A₂₂+lH₁₂)S₁C₂ + (−A₃₃+lH₁₃)C₁S₂ + (H₂₃−lK)S₁S₂.
pub fn detq_closed_form(fs: &FrameShape, cp: &CaseParams, l: f64) -> f64 {
    let a = &fs.a;
    let inv = &fs.invariants;
    let (s1, c1) = stability_functions(cp.delta1, l);
    let (s2, c2) = stability_functions(cp.delta2, l);
    (1.0 - l * a[(0, 0)]) * c1 * c2
        + (-a[(1, 1)] + l * inv.h12) * s1 * c2
        + (-a[(2, 2)] + l * inv.h13) * c1 * s2
        + (inv.h23 - l * inv.k) * s1 * s2
}

/// d/dl of [`detq_closed_form`], differentiated term by term.
pub fn detq_closed_form_derivative(fs: &FrameShape, cp: &CaseParams, l: f64) -> f64 {
    let a = &fs.a;
    let inv = &fs.invariants;
    let (s1, c1) = stability_functions(cp.delta1, l);
    let (s2, c2) = stability_functions(cp.delta2, l);
    let (ds1, dc1) = (c1, -cp.delta1 * s1);
    let (ds2, dc2) = (c2, -cp.delta2 * s2);
    -a[(0, 0)] * c1 * c2
        + (1.0 - l * a[(0, 0)]) * (dc1 * c2 + c1 * dc2)
        + inv.h12 * s1 * c2
        + (-a[(1, 1)] + l * inv.h12) * (ds1 * c2 + s1 * dc2)
        + inv.h13 * c1 * s2
        + (-a[(2, 2)] + l * inv.h13) * (dc1 * s2 + c1 * ds2)
        - inv.k * s1 * s2
        + (inv.h23 - l * inv.k) * (ds1 * s2 + s1 * ds2)
}

/// A_l = −Q′Q⁻¹.
pub fn parallel_shape(q: &Matrix3<f64>, q_prime: &Matrix3<f64>) -> Result<Matrix3<f64>> {
    let det = q.determinant();
    if !(det.abs() >= FOCAL_EPS) {
        return Err(GeoError::FocalPoint { det });
    }
    let inv = q.try_inverse().ok_or(GeoError::FocalPoint { det })?;
    Ok(-(q_prime * inv))
}

/// Shape operator of Φ_l in the transported adapted frame.
pub fn flowed_shape(fs: &FrameShape, cp: &CaseParams, l: f64) -> Result<Matrix3<f64>> {
    parallel_shape(&q_matrix(fs, cp, l), &q_matrix_derivative(fs, cp, l))
}

/// H(l) = −(det Q)′/det Q.
pub fn parallel_mean_curvature(fs: &FrameShape, cp: &CaseParams, l: f64) -> Result<f64> {
    let det = detq_closed_form(fs, cp, l);
    if !(det.abs() >= FOCAL_EPS) {
        return Err(GeoError::FocalPoint { det });
    }
    Ok(-detq_closed_form_derivative(fs, cp, l) / det)
}

/// The parallel hypersurface u ↦ (exp(l N₁(u)), exp~(l N₂(u))).
pub fn parallel_immersion(imm: &Immersion, l: f64) -> Immersion {
    let base = imm.clone();
    Immersion::new(imm.space(), *imm.domain(), move |u| {
        let p = base.eval(u)?;
        let n = base.normal_at(u)?;
        Ok(product_exp(&p, &n, l))
    })
    .with_orientation(imm.orientation())
    .with_label(format!("{}@l={l}", imm.label()))
}

/// γ′_p(l) for the normal geodesic of Σ at Φ(u); the unit normal of Φ_l there.
pub fn flowed_normal(imm: &Immersion, u: &[f64; 3], l: f64) -> Result<ProductVector> {
    let p = imm.eval(u)?;
    let n = imm.normal_at(u)?;
    Ok(product_velocity(&p, &n, l))
}

/// Parallel transport of tangent vectors at Φ(u) along the normal geodesic.
pub fn transport_along_normal(
    imm: &Immersion,
    u: &[f64; 3],
    l: f64,
    vectors: &[ProductVector; 3],
) -> Result<[ProductVector; 3]> {
    let p = imm.eval(u)?;
    let n = imm.normal_at(u)?;
    Ok(vectors.map(|w| product_transport(&p, &n, l, &w)))
}

fn deltas<T: Scalar>(kappa1: i64, kappa2: i64, c: &T) -> (T, T) {
    let two = int::<T>(2);
    (
        int::<T>(kappa1) * (T::one() + c.clone()) / two.clone(),
        int::<T>(kappa2) * (T::one() - c.clone()) / two,
    )
}

/// Series of the closed-form det Q in any coefficient field.
pub fn detq_series<T: Scalar>(
    a: &[[T; 3]; 3],
    kappa1: i64,
    kappa2: i64,
    c: &T,
    order: usize,
) -> TaylorSeries<T> {
    let (d1, d2) = deltas(kappa1, kappa2, c);
    let s1 = TaylorSeries::sine_like(&d1, order);
    let c1 = TaylorSeries::cosine_like(&d1, order);
    let s2 = TaylorSeries::sine_like(&d2, order);
    let c2 = TaylorSeries::cosine_like(&d2, order);
    let l = TaylorSeries::variable(order);
    let hij =
        |i: usize, j: usize| a[i][i].clone() * a[j][j].clone() - a[i][j].clone() * a[i][j].clone();
    let det_a = a[0][0].clone() * hij(1, 2)
        - a[0][1].clone() * (a[1][0].clone() * a[2][2].clone() - a[1][2].clone() * a[2][0].clone())
        + a[0][2].clone() * (a[1][0].clone() * a[2][1].clone() - a[1][1].clone() * a[2][0].clone());
    let one = TaylorSeries::one(order);
    let lin = |c0: T, c1: T| &TaylorSeries::constant(c0, order) + &l.scale(&c1);

    let t1 = &(&one - &l.scale(&a[0][0])) * &(&c1 * &c2);
    let t2 = &lin(-a[1][1].clone(), hij(0, 1)) * &(&s1 * &c2);
    let t3 = &lin(-a[2][2].clone(), hij(0, 2)) * &(&c1 * &s2);
    let t4 = &lin(hij(1, 2), -det_a) * &(&s1 * &s2);
    &(&t1 + &t2) + &(&t3 + &t4)
}

/// The entries of Q(l) as series, row-major.
pub fn q_matrix_series<T: Scalar>(
    a: &[[T; 3]; 3],
    kappa1: i64,
    kappa2: i64,
    c: &T,
    order: usize,
) -> [[TaylorSeries<T>; 3]; 3] {
    let (d1, d2) = deltas(kappa1, kappa2, c);
    let s1 = TaylorSeries::sine_like(&d1, order);
    let c1 = TaylorSeries::cosine_like(&d1, order);
    let s2 = TaylorSeries::sine_like(&d2, order);
    let c2 = TaylorSeries::cosine_like(&d2, order);
    let l = TaylorSeries::variable(order);
    let neg = |x: &T| -x.clone();
    [
        [
            &TaylorSeries::one(order) - &l.scale(&a[0][0]),
            l.scale(&neg(&a[0][1])),
            l.scale(&neg(&a[0][2])),
        ],
        [
            s1.scale(&neg(&a[0][1])),
            &c1 - &s1.scale(&a[1][1]),
            s1.scale(&neg(&a[1][2])),
        ],
        [
            s2.scale(&neg(&a[0][2])),
            s2.scale(&neg(&a[1][2])),
            &c2 - &s2.scale(&a[2][2]),
        ],
    ]
}

/// Taylor coefficients of det Q at l = 0; the k-th derivative is k!·c_k.
pub fn detq_taylor(fs: &FrameShape, cp: &CaseParams, order: usize) -> TaylorSeries<f64> {
    detq_series(
        &fs.entries::<f64>(),
        cp.kappa1.sign() as i64,
        cp.kappa2.sign() as i64,
        &cp.c,
        order,
    )
}

/// Taylor coefficients of det Q in h at l = l₀ + h, via re-centered stability series.
pub fn detq_taylor_at(
    fs: &FrameShape,
    cp: &CaseParams,
    l0: f64,
    order: usize,
) -> TaylorSeries<f64> {
    let a = &fs.a;
    let inv = &fs.invariants;
    let (s1, c1) = stability_series_at(cp.delta1, l0, order);
    let (s2, c2) = stability_series_at(cp.delta2, l0, order);
    let lin = |c0: f64, slope: f64| {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c0 + slope * l0;
        if order >= 1 {
            coeffs[1] = slope;
        }
        TaylorSeries::from_coeffs(coeffs)
    };
    let t1 = &lin(1.0, -a[(0, 0)]) * &(&c1 * &c2);
    let t2 = &lin(-a[(1, 1)], inv.h12) * &(&s1 * &c2);
    let t3 = &lin(-a[(2, 2)], inv.h13) * &(&c1 * &s2);
    let t4 = &lin(inv.h23, -inv.k) * &(&s1 * &s2);
    &(&t1 + &t2) + &(&t3 + &t4)
}
