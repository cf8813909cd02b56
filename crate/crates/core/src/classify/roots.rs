//! Real roots of polynomials of degree at most three.
//!
//! Closed forms (Cardano or the trigonometric form for cubics, the stable
//! quadratic formula) give starting values; each root is then polished by
//! Newton's method and roots closer than [`ROOT_DEDUP_TOL`] are merged.

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};

/// Roots closer than this are reported once, with their multiplicities added.
pub const ROOT_DEDUP_TOL: f64 = 1e-10;

/// Leading coefficients below this multiple of the largest one are dropped.
const DEGREE_DROP_EPS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
    pub in_range: bool,
}

pub(crate) fn in_unit_interval(x: f64) -> bool {
    (-1.0 - ROOT_DEDUP_TOL..=1.0 + ROOT_DEDUP_TOL).contains(&x)
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn eval_derivative(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, c)| acc * x + k as f64 * c)
}

/// Newton steps, kept only while they reduce |p|.
fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    let mut best = eval(coeffs, x).abs();
    for _ in 0..8 {
        if best == 0.0 {
            break;
        }
        let d = eval_derivative(coeffs, x);
        if d == 0.0 {
            break;
        }
        let next = x - eval(coeffs, x) / d;
        let r = eval(coeffs, next).abs();
        if !(r < best) {
            break;
        }
        x = next;
        best = r;
    }
    x
}

/// Real roots of c₀ + c₁x + c₂x² + c₃x³ (ascending coefficients, at most four),
/// sorted ascending, with multiplicities and the flag x ∈ [−1, 1].
pub fn solve_polynomial(coeffs: &[f64]) -> Result<Vec<Root>> {
    if coeffs.len() > 4 {
        return Err(GeoError::Unsupported(format!(
            "degree {} exceeds 3",
            coeffs.len() - 1
        )));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(GeoError::Domain("non-finite polynomial coefficient".into()));
    }
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(GeoError::ZeroPolynomial);
    }
    let mut degree = coeffs.len() - 1;
    while degree > 0 && coeffs[degree].abs() <= DEGREE_DROP_EPS * scale {
        degree -= 1;
    }
    let p = &coeffs[..=degree];
    let raw: Vec<(f64, u32)> = match degree {
        0 => Vec::new(),
        1 => vec![(-p[0] / p[1], 1)],
        2 => quadratic(p[0] / p[2], p[1] / p[2]),
        _ => cubic(p[2] / p[3], p[1] / p[3], p[0] / p[3]),
    };

    let mut roots: Vec<Root> = Vec::new();
    let mut polished: Vec<(f64, u32)> = raw
        .into_iter()
        .map(|(x, m)| (if m == 1 { polish(p, x) } else { x }, m))
        .collect();
    polished.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (x, m) in polished {
        match roots.last_mut() {
            Some(last) if (x - last.value).abs() <= ROOT_DEDUP_TOL * 1.0_f64.max(x.abs()) => {
                last.multiplicity += m;
            }
            _ => roots.push(Root {
                value: x,
                multiplicity: m,
                in_range: in_unit_interval(x),
            }),
        }
    }
    Ok(roots)
}

/// x² + bx + c.
fn quadratic(c: f64, b: f64) -> Vec<(f64, u32)> {
    let disc = b * b - 4.0 * c;
    let tol = 4.0 * f64::EPSILON * (b * b).max(4.0 * c.abs());
    if disc.abs() <= tol {
        return vec![(-b / 2.0, 2)];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    // |b ± √disc| ≥ √disc > 0, so q ≠ 0.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    vec![(q, 1), (c / q, 1)]
}

/// x³ + ax² + bx + c through the depressed cubic t³ + pt + q, x = t − a/3.
fn cubic(a: f64, b: f64, c: f64) -> Vec<(f64, u32)> {
    if c == 0.0 {
        // x(x² + ax + b)
        let mut out = vec![(0.0, 1)];
        if b == 0.0 {
            out[0].1 = 2;
            out.push((-a, 1));
            if a == 0.0 {
                return vec![(0.0, 3)];
            }
            return out;
        }
        out.extend(quadratic(b, a));
        return out;
    }
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let mag = 1.0_f64.max(a.abs()).max(b.abs().sqrt()).max(c.abs().cbrt());
    let eps = 16.0 * f64::EPSILON;
    if p.abs() <= eps * mag * mag && q.abs() <= eps * mag * mag * mag {
        return vec![(shift, 3)];
    }
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let disc_tol = eps * (half_q * half_q).max(third_p.abs().powi(3));
    if disc.abs() <= disc_tol && p != 0.0 {
        // One simple root and one double root.
        let simple = 3.0 * q / p;
        let double = -1.5 * q / p;
        return vec![(simple + shift, 1), (double + shift, 2)];
    }
    if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-half_q - half_q.signum() * s).cbrt();
        let t = if u == 0.0 { 0.0 } else { u - third_p / u };
        return vec![(t + shift, 1)];
    }
    // Three distinct real roots.
    let r = (-third_p).sqrt();
    let cos_arg = (-half_q / (r * r * r)).clamp(-1.0, 1.0);
    let phi = cos_arg.acos() / 3.0;
    let two_pi_3 = 2.0 * std::f64::consts::PI / 3.0;
    (0..3)
        .map(|k| (2.0 * r * (phi - two_pi_3 * k as f64).cos() + shift, 1))
        .collect()
}
