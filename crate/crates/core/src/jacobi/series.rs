//! Truncated power series in the flow parameter l.
//!
//! Arithmetic is carried out in the coefficient field `T`; with an exact
//! rational type every operation up to the truncation order is exact.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{factorial, int, Scalar};

/// c₀ + c₁l + … + cₙlⁿ + O(lⁿ⁺¹).
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries<T = f64> {
    coeffs: Vec<T>,
}

pub const DEFAULT_ORDER: usize = 12;

impl<T: Scalar> TaylorSeries<T> {
    /// Builds a series from coefficients c₀..cₙ; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(T::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series of l itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// S_δ(l) = l − δl³/3! + δ²l⁵/5! − …
    pub fn sine_like(delta: &T, order: usize) -> Self {
        Self::oscillator(delta, order, 1)
    }

    /// C_δ(l) = 1 − δl²/2! + δ²l⁴/4! − …
    pub fn cosine_like(delta: &T, order: usize) -> Self {
        Self::oscillator(delta, order, 0)
    }

    // Solutions of f'' + δf = 0; c_k = −δ c_{k−2} / (k(k−1)).
    fn oscillator(delta: &T, order: usize, start: usize) -> Self {
        let mut s = Self::zero(order);
        if start > order {
            return s;
        }
        s.coeffs[start] = T::one();
        let mut k = start + 2;
        while k <= order {
            let prev = s.coeffs[k - 2].clone();
            s.coeffs[k] = -(delta.clone() * prev) / int::<T>((k * (k - 1)) as i64);
            k += 2;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// d/dl; the order drops by one (an order-0 series differentiates to zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * int::<T>(k as i64))
            .collect();
        Self { coeffs }
    }

    /// The k-th derivative at l = 0, k!·c_k.
    pub fn derivative_at_zero(&self, k: usize) -> T {
        factorial::<T>(k) * self.coeff(k)
    }

    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> Add for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn add(self, rhs: &TaylorSeries<T>) -> TaylorSeries<T> {
        let n = self.order().min(rhs.order());
        TaylorSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn sub(self, rhs: &TaylorSeries<T>) -> TaylorSeries<T> {
        let n = self.order().min(rhs.order());
        TaylorSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn mul(self, rhs: &TaylorSeries<T>) -> TaylorSeries<T> {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if *a == T::zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TaylorSeries { coeffs }
    }
}

impl<T: Scalar> Neg for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn neg(self) -> TaylorSeries<T> {
        TaylorSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for TaylorSeries<T> {
            type Output = TaylorSeries<T>;
            fn $m(self, rhs: TaylorSeries<T>) -> TaylorSeries<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// S_δ and C_δ re-centered at l₀: S(l₀+h) = S(l₀)C(h) + C(l₀)S(h) and
/// C(l₀+h) = C(l₀)C(h) − δS(l₀)S(h), as series in h.
pub fn stability_series_at(
    delta: f64,
    l0: f64,
    order: usize,
) -> (TaylorSeries<f64>, TaylorSeries<f64>) {
    let (s0, c0) = super::stability_functions(delta, l0);
    let sh = TaylorSeries::sine_like(&delta, order);
    let ch = TaylorSeries::cosine_like(&delta, order);
    let s = &ch.scale(&s0) + &sh.scale(&c0);
    let c = &ch.scale(&c0) - &sh.scale(&(delta * s0));
    (s, c)
}
