//! Coefficient field shared by the series engine and the closed-form
//! derivative displays, so both can run on `f64` or on exact rationals.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + Debug {}

impl<T> Scalar for T where T: Num + Neg<Output = T> + FromPrimitive + Clone + PartialEq + Debug {}

/// The integer `v` as a field element.
pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("every field in use represents small integers")
}

/// The rational `num/den` as a field element.
pub fn ratio<T: Scalar>(num: i64, den: i64) -> T {
    int::<T>(num) / int::<T>(den)
}

/// Σ coeffs[i]·xⁱ with integer coefficients, by Horner's rule.
pub fn horner<T: Scalar>(x: &T, coeffs: &[i64]) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + int::<T>(*c))
}

pub fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k as i64).fold(T::one(), |acc, i| acc * int::<T>(i))
}
