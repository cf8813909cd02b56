use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use prodform_geo::classify::{
    case_alphas, constancy_polynomial, invariants_from_alphas, solve_polynomial, AlphaRecord,
    CaseId, PolyVariable,
};
use prodform_geo::GeoError;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn case_strategy() -> impl Strategy<Value = CaseId> {
    prop::sample::select(CaseId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_annihilates_c_exactly(
        case in case_strategy(),
        cn in -99i64..=99,
        rn in -400i64..=400,
        h12n in -200i64..=200,
        h13n in -200i64..=200,
    ) {
        let (c, rho, h12, h13) = (q(cn, 100), q(rn, 100), q(h12n, 100), q(h13n, 100));
        let ar = case_alphas(case, &c, &rho, &h12, &h13);
        let poly = constancy_polynomial(case, &ar).unwrap();
        let x = match poly.variable {
            PolyVariable::C => c.clone(),
            PolyVariable::OnePlusC => Q::one() + &c,
        };
        prop_assert!(poly.evaluate(&x).is_zero());
    }

    #[test]
    fn invariants_round_trip(
        case in case_strategy(),
        c in -0.95f64..0.95,
        rho in -4.0f64..4.0,
        h12 in -2.0f64..2.0,
        h13 in -2.0f64..2.0,
    ) {
        let h12 = if case.uses_h12() { h12 } else { 0.0 };
        let ar = case_alphas(case, &c, &rho, &h12, &h13);
        let back = invariants_from_alphas(case, &ar, c).unwrap();
        prop_assert!((back.rho - rho).abs() < 1e-10);
        prop_assert!((back.h13 - h13).abs() < 1e-10);
        prop_assert_eq!(back.h12.is_some(), case.uses_h12());
        if let Some(b) = back.h12 {
            prop_assert!((b - h12).abs() < 1e-10);
        }
    }

    #[test]
    fn recovered_roots_include_c(
        case in case_strategy(),
        c in -0.9f64..0.9,
        rho in -4.0f64..4.0,
        h12 in -2.0f64..2.0,
        h13 in -2.0f64..2.0,
    ) {
        let ar = case_alphas(case, &c, &rho, &h12, &h13);
        let poly = constancy_polynomial(case, &ar).unwrap();
        let roots = poly.c_roots().unwrap();
        let best = roots.iter().map(|r| (r.value - c).abs()).fold(f64::INFINITY, f64::min);
        prop_assert!(best < 1e-8, "roots {:?} miss {}", roots, c);
        for r in roots.iter().filter(|r| r.in_range) {
            prop_assert!(r.value.abs() <= 1.0);
        }
    }

    #[test]
    fn solver_roots_have_small_residuals(coeffs in prop::array::uniform4(-10.0f64..10.0)) {
        prop_assume!(coeffs[3].abs() > 1e-3);
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        for r in solve_polynomial(&coeffs).unwrap() {
            let v = r.value;
            let p = coeffs[0] + v * (coeffs[1] + v * (coeffs[2] + v * coeffs[3]));
            let dp = coeffs[1] + v * (2.0 * coeffs[2] + v * 3.0 * coeffs[3]);
            // multiple roots are only determined to about √ε
            let tol = if r.multiplicity > 1 { 1e-6 } else { 1e-9 };
            prop_assert!(p.abs() <= tol * scale * (1.0 + v.abs()).powi(3) || dp.abs() < 1e-6 * scale,
                "root {} residual {}", v, p);
        }
    }

    #[test]
    fn solver_finds_planted_roots(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        // (x − a)(x − b)(x − c)
        let coeffs = [-a * b * c, a * b + b * c + a * c, -(a + b + c), 1.0];
        let roots = solve_polynomial(&coeffs).unwrap();
        for planted in [a, b, c] {
            let best = roots.iter().map(|r| (r.value - planted).abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-4, "{} not among {:?}", planted, roots);
        }
    }
}

#[test]
fn planted_double_root_has_multiplicity_two() {
    // (x − 1)²(x + 2)
    let roots = solve_polynomial(&[2.0, -3.0, 0.0, 1.0]).unwrap();
    assert_eq!(roots.len(), 2);
    let double = roots.iter().find(|r| (r.value - 1.0).abs() < 1e-8).unwrap();
    assert_eq!(double.multiplicity, 2);
}

#[test]
fn degenerate_denominators_are_reported() {
    let ar = AlphaRecord {
        alpha1: 0.2,
        alpha2: 0.1,
        alpha3: -0.3,
        alpha4: Some(0.0),
    };
    assert!(matches!(
        invariants_from_alphas(CaseId::S2xH2, &ar, 1.0),
        Err(GeoError::DegenerateDenominator { .. })
    ));
    let ar = AlphaRecord {
        alpha1: 0.2,
        alpha2: 0.1,
        alpha3: -0.3,
        alpha4: None,
    };
    assert!(matches!(
        invariants_from_alphas(CaseId::S2xR2, &ar, -1.0),
        Err(GeoError::DegenerateDenominator { .. })
    ));
}

#[test]
fn mixed_case_needs_the_fourth_alpha() {
    let ar = AlphaRecord {
        alpha1: 0.2,
        alpha2: 0.1,
        alpha3: -0.3,
        alpha4: None,
    };
    assert!(constancy_polynomial(CaseId::S2xH2, &ar).is_err());
}

#[test]
fn case_tags_parse_back() {
    for case in CaseId::ALL {
        assert_eq!(case.tag().parse::<CaseId>().unwrap(), case);
    }
}
