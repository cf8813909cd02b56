//! Closed forms of d^k(det Q)/dl^k at l = 0 for k ∈ {1, 2, 4, 6, 10}.
//!
//! Each display is transcribed term by term as a polynomial in C, ρ, H₁₂, H₁₃
//! and the curvature tags. The order-10 form exists only for (κ₁, κ₂) = (1, −1).
//! Other orders are available from the series engine but have no closed form
//! here and are rejected.

use super::{CaseParams, FrameShape};
use crate::error::{GeoError, Result};
use crate::scalar::{horner, int, ratio, Scalar};

pub const FORMULA_ORDERS: [u32; 5] = [1, 2, 4, 6, 10];

/// The invariants the displays depend on.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeInputs<T> {
    pub c: T,
    pub h: T,
    pub rho: T,
    pub h12: T,
    pub h13: T,
}

impl DerivativeInputs<f64> {
    pub fn from_frame_shape(fs: &FrameShape, cp: &CaseParams) -> Self {
        Self {
            c: cp.c(),
            h: fs.invariants.h,
            rho: fs.invariants.rho,
            h12: fs.invariants.h12,
            h13: fs.invariants.h13,
        }
    }
}

/// Evaluates the order-`k` display for integer curvature tags.
pub fn derivative_display<T: Scalar>(
    k: u32,
    x: &DerivativeInputs<T>,
    kappa1: i64,
    kappa2: i64,
) -> Result<T> {
    match k {
        1 => Ok(-x.h.clone()),
        2 => Ok(second(x, kappa1, kappa2)),
        4 => Ok(fourth(x, kappa1, kappa2)),
        6 => Ok(sixth(x, kappa1, kappa2)),
        10 if (kappa1, kappa2) == (1, -1) => Ok(tenth(x)),
        10 => Err(GeoError::Unsupported(format!(
            "the order-10 closed form is only available for (1, -1), not ({kappa1}, {kappa2})"
        ))),
        _ => Err(GeoError::Unsupported(format!(
            "no closed form for derivative order {k}"
        ))),
    }
}

pub fn detq_derivative_formula(k: u32, fs: &FrameShape, cp: &CaseParams) -> Result<f64> {
    derivative_display(
        k,
        &DerivativeInputs::from_frame_shape(fs, cp),
        cp.kappa1().sign() as i64,
        cp.kappa2().sign() as i64,
    )
}

/// ρ − 3(κ₁+κ₂)/2 + (κ₁−κ₂)C/2
fn second<T: Scalar>(x: &DerivativeInputs<T>, kappa1: i64, kappa2: i64) -> T {
    x.rho.clone() - ratio::<T>(3, 2) * int(kappa1 + kappa2)
        + int::<T>(kappa1 - kappa2) * x.c.clone() / int(2)
}

fn fourth<T: Scalar>(x: &DerivativeInputs<T>, kappa1: i64, kappa2: i64) -> T {
    let (k1, k2) = (int::<T>(kappa1), int::<T>(kappa2));
    let c = &x.c;
    let one = T::one();
    let one_m = one.clone() - c.clone();
    let one_p = one + c.clone();

    let t_h12 = int::<T>(-4) * one_m.clone() * k2.clone() * x.h12.clone();
    let t_h13 = int::<T>(-4) * one_p.clone() * k1.clone() * x.h13.clone();
    // −(3C²−2C−5)/4 κ₁² − (3C²+2C−5)/4 κ₂²
    let t_k1sq = -(horner(c, &[-5, -2, 3]) / int(4)) * k1.clone() * k1.clone();
    let t_k2sq = -(horner(c, &[-5, 2, 3]) / int(4)) * k2.clone() * k2.clone();
    // (7+C²)/2 κ₁κ₂
    let t_mixed = horner(c, &[7, 0, 1]) / int(2) * k1.clone() * k2.clone();
    // −[(1+C)κ₁ + (1−C)κ₂]ρ
    let t_rho = -((one_p * k1) + (one_m * k2)) * x.rho.clone();

    t_h12 + t_h13 + t_k1sq + t_k2sq + t_mixed + t_rho
}

fn sixth<T: Scalar>(x: &DerivativeInputs<T>, kappa1: i64, kappa2: i64) -> T {
    let (k1, k2) = (int::<T>(kappa1), int::<T>(kappa2));
    let c = &x.c;
    let one = T::one();
    let one_m = one.clone() - c.clone();
    let one_p = one.clone() + c.clone();
    let one_m_sq = one_m.clone() * one_m.clone();
    let one_p_sq = one_p.clone() * one_p.clone();
    let one_m_csq = one - c.clone() * c.clone();
    let k1k2 = k1.clone() * k2.clone();
    let k1sq = k1.clone() * k1.clone();
    let k2sq = k2.clone() * k2.clone();

    // [6(1−C)²κ₂² + 10(1−C²)κ₁κ₂] H₁₂
    let t_h12 = (int::<T>(6) * one_m_sq.clone() * k2sq.clone()
        + int::<T>(10) * one_m_csq.clone() * k1k2.clone())
        * x.h12.clone();
    // [6(1+C)²κ₁² + 10(1−C²)κ₁κ₂] H₁₃
    let t_h13 = (int::<T>(6) * one_p_sq.clone() * k1sq.clone()
        + int::<T>(10) * one_m_csq.clone() * k1k2.clone())
        * x.h13.clone();
    // ¼[3(1+C)²κ₁² + 10(1−C²)κ₁κ₂ + 3(1−C)²κ₂²] ρ
    let t_rho = (int::<T>(3) * one_p_sq.clone() * k1sq.clone()
        + int::<T>(10) * one_m_csq * k1k2
        + int::<T>(3) * one_m_sq.clone() * k2sq.clone())
        / int(4)
        * x.rho.clone();
    // ⅛{(1+C)²(5C−7)κ₁³ − (41+13C−17C²+11C³)κ₁²κ₂ + (−41+13C+17C²+11C³)κ₁κ₂² − (1−C)²(7+5C)κ₂³}
    let cubic = one_p_sq * horner(c, &[-7, 5]) * k1sq.clone() * k1.clone()
        - horner(c, &[41, 13, -17, 11]) * k1sq * k2.clone()
        + horner(c, &[-41, 13, 17, 11]) * k1 * k2sq.clone()
        - one_m_sq * horner(c, &[7, 5]) * k2sq * k2;
    t_h12 + t_h13 + t_rho + cubic / int(8)
}

/// Order 10 for (κ₁, κ₂) = (1, −1):
/// (128C⁴−80C³−96C²+40C+8)H₁₂ + (128C⁴+80C³−96C²−40C+8)H₁₃ + (16C⁴−12C²+1)ρ + 16C⁵−4C³−3C.
fn tenth<T: Scalar>(x: &DerivativeInputs<T>) -> T {
    let c = &x.c;
    horner(c, &[8, 40, -96, -80, 128]) * x.h12.clone()
        + horner(c, &[8, -40, -96, 80, 128]) * x.h13.clone()
        + horner(c, &[1, 0, -12, 0, 16]) * x.rho.clone()
        + horner(c, &[0, -3, 0, -4, 0, 16])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(c: f64, rho: f64, h12: f64, h13: f64) -> DerivativeInputs<f64> {
        DerivativeInputs {
            c,
            h: 0.9,
            rho,
            h12,
            h13,
        }
    }

    #[test]
    fn first_order_is_minus_h() {
        for (k1, k2) in [(1, -1), (1, 0), (-1, 0)] {
            assert_eq!(
                derivative_display(1, &inputs(0.3, 1.0, 2.0, 3.0), k1, k2).unwrap(),
                -0.9
            );
        }
    }

    #[test]
    fn second_order_in_s2xr2() {
        let x = inputs(0.4, 1.7, 0.0, 0.0);
        let got = derivative_display(2, &x, 1, 0).unwrap();
        assert!((got - (1.7 - 1.5 + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn unsupported_orders() {
        let x = inputs(0.1, 0.2, 0.3, 0.4);
        assert!(matches!(
            derivative_display(10, &x, 1, 0),
            Err(GeoError::Unsupported(_))
        ));
        for k in [0, 3, 5, 7, 8, 9, 11] {
            assert!(matches!(
                derivative_display(k, &x, 1, -1),
                Err(GeoError::Unsupported(_))
            ));
        }
    }

    #[test]
    fn tenth_order_at_zero_inputs() {
        // Only the constant term 1·ρ + 8H₁₂ + 8H₁₃ survives at C = 0.
        let x = inputs(0.0, 2.0, 0.5, -0.25);
        assert_eq!(derivative_display(10, &x, 1, -1).unwrap(), 2.0 + 4.0 - 2.0);
    }
}
