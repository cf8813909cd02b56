//! The three κ₁ ≠ κ₂ case systems, the polynomial each one imposes on C,
//! and a gallery of hypersurfaces with constant principal curvatures.
//!
//! For each product the constancy of the even derivatives of det Q at l = 0
//! gives quantities α₁, α₂, α₃ (and α₄ for 𝕊²×ℍ²) built from C, ρ, H₁₂, H₁₃.
//! Solving back for the invariants and substituting leaves a nonzero cubic
//! in C (or in 1 + C) with constant coefficients.

pub mod gallery;
pub mod report;
pub mod roots;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::jacobi::{derivative_display, DerivativeInputs};
use crate::scalar::{horner, int, Scalar};
use crate::spaceform::Kappa;

pub use gallery::{build_example, perturbed_psi, psi_normal, ExampleSpec, PsiParams};
pub use report::{
    flow_rows, isoparametric_report, jacobi_flow_defect, ricci_trace_defect, FlowRow, FlowSample,
    IsoReport, Stat,
};
pub use roots::{solve_polynomial, Root, ROOT_DEDUP_TOL};

/// Denominators 1 ± C smaller than this are refused.
pub const DENOMINATOR_EPS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    S2xH2,
    S2xR2,
    H2xR2,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::S2xH2, CaseId::S2xR2, CaseId::H2xR2];

    pub fn kappas(self) -> (Kappa, Kappa) {
        match self {
            CaseId::S2xH2 => (Kappa::Spherical, Kappa::Hyperbolic),
            CaseId::S2xR2 => (Kappa::Spherical, Kappa::Flat),
            CaseId::H2xR2 => (Kappa::Hyperbolic, Kappa::Flat),
        }
    }

    pub fn kappa_signs(self) -> (i64, i64) {
        let (a, b) = self.kappas();
        (a.sign() as i64, b.sign() as i64)
    }

    pub fn tag(self) -> &'static str {
        match self {
            CaseId::S2xH2 => "s2h2",
            CaseId::S2xR2 => "s2r2",
            CaseId::H2xR2 => "h2r2",
        }
    }

    /// Whether H₁₂ enters the case system.
    pub fn uses_h12(self) -> bool {
        self == CaseId::S2xH2
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CaseId {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s2h2" | "s2xh2" => Ok(CaseId::S2xH2),
            "s2r2" | "s2xr2" => Ok(CaseId::S2xR2),
            "h2r2" | "h2xr2" => Ok(CaseId::H2xR2),
            _ => Err(GeoError::Domain(format!(
                "unknown case '{s}' (expected s2h2, s2r2 or h2r2)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRecord<T = f64> {
    pub alpha1: T,
    pub alpha2: T,
    pub alpha3: T,
    pub alpha4: Option<T>,
}

/// Left-hand sides of the case system, and α₄ = (d¹⁰ det Q/dl¹⁰)(0) for 𝕊²×ℍ².
pub fn case_alphas<T: Scalar>(case: CaseId, c: &T, rho: &T, h12: &T, h13: &T) -> AlphaRecord<T> {
    let c = c.clone();
    let rho = rho.clone();
    let one_p = T::one() + c.clone();
    match case {
        CaseId::S2xH2 => {
            let alpha1 = rho.clone() + c.clone();
            let alpha2 = horner(&c, &[-1, 0, -2]) + horner(&c, &[4, -4]) * h12.clone()
                - horner(&c, &[4, 4]) * h13.clone()
                - int::<T>(2) * c.clone() * rho.clone();
            let alpha3 = horner(&c, &[0, 1, 0, 4])
                + horner(&c, &[-4, -12, 16]) * h12.clone()
                + horner(&c, &[-4, 12, 16]) * h13.clone()
                + horner(&c, &[-1, 0, 4]) * rho.clone();
            let inputs = DerivativeInputs {
                c,
                h: T::zero(),
                rho,
                h12: h12.clone(),
                h13: h13.clone(),
            };
            let alpha4 =
                derivative_display(10, &inputs, 1, -1).expect("order 10 exists for (1, -1)");
            AlphaRecord {
                alpha1,
                alpha2,
                alpha3,
                alpha4: Some(alpha4),
            }
        }
        CaseId::S2xR2 => {
            let alpha1 = horner(&c, &[-3, 1]) / int(2) + rho.clone();
            let alpha2 = -(one_p.clone()
                * (horner(&c, &[-5, 3]) + int::<T>(4) * rho.clone() + int::<T>(16) * h13.clone()))
                / int(4);
            let alpha3 = one_p.clone()
                * one_p
                * (int::<T>(6) * rho + int::<T>(48) * h13.clone() + horner(&c, &[-7, 5]))
                / int(8);
            AlphaRecord {
                alpha1,
                alpha2,
                alpha3,
                alpha4: None,
            }
        }
        CaseId::H2xR2 => {
            let alpha1 = horner(&c, &[3, -1]) / int(2) + rho.clone();
            let alpha2 = -(one_p.clone()
                * (horner(&c, &[-5, 3]) - int::<T>(4) * rho.clone() - int::<T>(16) * h13.clone()))
                / int(4);
            let alpha3 = one_p.clone()
                * one_p
                * (int::<T>(6) * rho + int::<T>(48) * h13.clone() + horner(&c, &[7, -5]))
                / int(8);
            AlphaRecord {
                alpha1,
                alpha2,
                alpha3,
                alpha4: None,
            }
        }
    }
}

/// (ρ, H₁₂, H₁₃) recovered from the α's; H₁₂ only for 𝕊²×ℍ².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolvedInvariants {
    pub rho: f64,
    pub h12: Option<f64>,
    pub h13: f64,
}

fn check_denominator(sign: char, value: f64, c: f64) -> Result<()> {
    if value.abs() > DENOMINATOR_EPS {
        Ok(())
    } else {
        Err(GeoError::DegenerateDenominator { sign, c })
    }
}

pub fn invariants_from_alphas(case: CaseId, ar: &AlphaRecord, c: f64) -> Result<SolvedInvariants> {
    let (a1, a2, a3) = (ar.alpha1, ar.alpha2, ar.alpha3);
    match case {
        CaseId::S2xH2 => {
            check_denominator('-', 1.0 - c, c)?;
            check_denominator('+', 1.0 + c, c)?;
            let h12 = -(4.0 * a1 * c * c - (2.0 * a1 - 4.0 * a2 - 2.0) * c + a1 - a2 + a3 - 1.0)
                / (8.0 * (1.0 - c));
            let h13 = -(4.0 * a1 * c * c + (2.0 * a1 + 4.0 * a2 + 2.0) * c + a1 + a2 + a3 + 1.0)
                / (8.0 * (1.0 + c));
            Ok(SolvedInvariants {
                rho: a1 - c,
                h12: Some(h12),
                h13,
            })
        }
        CaseId::S2xR2 => {
            check_denominator('+', 1.0 + c, c)?;
            let x = 1.0 + c;
            Ok(SolvedInvariants {
                rho: a1 + 1.5 - c / 2.0,
                h12: None,
                h13: -(x * x + 4.0 * a1 * x + 4.0 * a2) / (16.0 * x),
            })
        }
        CaseId::H2xR2 => {
            check_denominator('+', 1.0 + c, c)?;
            let x = 1.0 + c;
            Ok(SolvedInvariants {
                rho: a1 - 1.5 + c / 2.0,
                h12: None,
                h13: (x * x - 4.0 * a1 * x + 4.0 * a2) / (16.0 * x),
            })
        }
    }
}

/// The indeterminate of a constancy polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyVariable {
    C,
    OnePlusC,
}

impl PolyVariable {
    pub fn to_c(self, x: f64) -> f64 {
        match self {
            PolyVariable::C => x,
            PolyVariable::OnePlusC => x - 1.0,
        }
    }

    pub fn from_c(self, c: f64) -> f64 {
        match self {
            PolyVariable::C => c,
            PolyVariable::OnePlusC => 1.0 + c,
        }
    }
}

/// c₀ + c₁x + c₂x² + c₃x³ in the variable `variable`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstancyPolynomial<T = f64> {
    pub variable: PolyVariable,
    pub coeffs: [T; 4],
}

impl<T: Scalar> ConstancyPolynomial<T> {
    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl ConstancyPolynomial<f64> {
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Residual at the point C (not at the polynomial variable).
    pub fn evaluate_at_c(&self, c: f64) -> f64 {
        self.evaluate(&self.variable.from_c(c))
    }

    /// Real roots, reported in terms of C and flagged for C ∈ [−1, 1].
    pub fn c_roots(&self) -> Result<Vec<Root>> {
        let mut roots = solve_polynomial(&self.coeffs)?;
        for r in &mut roots {
            r.value = self.variable.to_c(r.value);
            r.in_range = roots::in_unit_interval(r.value);
        }
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        Ok(roots)
    }
}

/// The cubic obtained by eliminating ρ, H₁₂, H₁₃ from the case system.
pub fn constancy_polynomial<T: Scalar>(
    case: CaseId,
    ar: &AlphaRecord<T>,
) -> Result<ConstancyPolynomial<T>> {
    let (a1, a2, a3) = (ar.alpha1.clone(), ar.alpha2.clone(), ar.alpha3.clone());
    let k = |n: i64| int::<T>(n);
    match case {
        CaseId::S2xH2 => {
            let a4 = ar.alpha4.clone().ok_or(GeoError::MissingAlpha4)?;
            Ok(ConstancyPolynomial {
                variable: PolyVariable::C,
                coeffs: [
                    -a1.clone() - k(2) * a3.clone() - a4,
                    k(4) * a2.clone() + k(4),
                    k(16) * a1 + k(12) * a3,
                    k(16) * a2,
                ],
            })
        }
        CaseId::S2xR2 => Ok(ConstancyPolynomial {
            variable: PolyVariable::OnePlusC,
            coeffs: [k(8) * a3, k(12) * a2, k(6) * a1, T::one()],
        }),
        CaseId::H2xR2 => Ok(ConstancyPolynomial {
            variable: PolyVariable::OnePlusC,
            coeffs: [-(k(8) * a3), k(12) * a2, -(k(6) * a1), T::one()],
        }),
    }
}

/// Whether the C, C², C³ coefficients vanish together (never for the printed systems).
pub fn leading_coefficients_vanish(poly: &ConstancyPolynomial) -> bool {
    poly.coeffs[1..].iter().all(|c| *c == 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2h2_at_zero_inputs() {
        let ar = case_alphas(CaseId::S2xH2, &0.0, &0.0, &0.0, &0.0);
        assert_eq!((ar.alpha1, ar.alpha2, ar.alpha3), (0.0, -1.0, 0.0));
        assert_eq!(ar.alpha4, Some(0.0));
    }

    #[test]
    fn first_alphas_in_r2_cases() {
        let (c, rho): (f64, f64) = (0.3, 1.25);
        let s = case_alphas(CaseId::S2xR2, &c, &rho, &9.0, &0.1);
        let h = case_alphas(CaseId::H2xR2, &c, &rho, &9.0, &0.1);
        assert!((s.alpha1 - ((-3.0 + c) / 2.0 + rho)).abs() < 1e-15);
        assert!((h.alpha1 - ((3.0 - c) / 2.0 + rho)).abs() < 1e-15);
        assert!(s.alpha4.is_none() && h.alpha4.is_none());
    }

    #[test]
    fn solved_rho() {
        let ar = AlphaRecord {
            alpha1: 2.0,
            alpha2: 0.5,
            alpha3: -1.0,
            alpha4: Some(0.0),
        };
        let c = 0.2;
        assert!(
            (invariants_from_alphas(CaseId::S2xH2, &ar, c).unwrap().rho - (2.0 - c)).abs() < 1e-15
        );
        assert!(
            (invariants_from_alphas(CaseId::S2xR2, &ar, c).unwrap().rho - (2.0 + 1.5 - 0.1)).abs()
                < 1e-15
        );
        assert!(invariants_from_alphas(CaseId::S2xR2, &ar, c)
            .unwrap()
            .h12
            .is_none());
    }

    #[test]
    fn degenerate_denominators_are_named() {
        let ar = AlphaRecord {
            alpha1: 0.0,
            alpha2: 0.0,
            alpha3: 0.0,
            alpha4: Some(0.0),
        };
        assert_eq!(
            invariants_from_alphas(CaseId::S2xH2, &ar, 1.0),
            Err(GeoError::DegenerateDenominator { sign: '-', c: 1.0 })
        );
        assert_eq!(
            invariants_from_alphas(CaseId::H2xR2, &ar, -1.0),
            Err(GeoError::DegenerateDenominator { sign: '+', c: -1.0 })
        );
    }

    #[test]
    fn zero_alphas() {
        let zero = AlphaRecord {
            alpha1: 0.0,
            alpha2: 0.0,
            alpha3: 0.0,
            alpha4: Some(0.0),
        };
        let p = constancy_polynomial(CaseId::S2xH2, &zero).unwrap();
        assert_eq!(p.coeffs, [0.0, 4.0, 0.0, 0.0]);
        let roots = p.c_roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].value, 0.0);

        let p = constancy_polynomial(
            CaseId::S2xR2,
            &AlphaRecord {
                alpha4: None,
                ..zero
            },
        )
        .unwrap();
        let roots = p.c_roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!((roots[0].value, roots[0].multiplicity), (-1.0, 3));
        assert!(roots[0].in_range);
    }

    #[test]
    fn missing_alpha4() {
        let ar = AlphaRecord {
            alpha1: 1.0,
            alpha2: 0.0,
            alpha3: 0.0,
            alpha4: None,
        };
        assert_eq!(
            constancy_polynomial(CaseId::S2xH2, &ar),
            Err(GeoError::MissingAlpha4)
        );
    }

    #[test]
    fn polynomial_annihilates_the_angle() {
        for case in CaseId::ALL {
            let c: f64 = 0.37;
            let ar = case_alphas(case, &c, &1.3, &-0.4, &0.8);
            let p = constancy_polynomial(case, &ar).unwrap();
            assert!(
                p.evaluate_at_c(c).abs() < 1e-12 * p.max_abs_coeff(),
                "{case}"
            );
            assert!(!leading_coefficients_vanish(&p));
            assert!(p
                .c_roots()
                .unwrap()
                .iter()
                .any(|r| (r.value - c).abs() < 1e-8));
        }
    }

    #[test]
    fn case_tags_parse() {
        for case in CaseId::ALL {
            assert_eq!(case.tag().parse::<CaseId>().unwrap(), case);
        }
        assert!("s2s2".parse::<CaseId>().is_err());
    }
}
