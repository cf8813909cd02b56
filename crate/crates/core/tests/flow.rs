use nalgebra::Matrix3;

use prodform_geo::ambient::curvature_tensor;
use prodform_geo::classify::{
    build_example, isoparametric_report, jacobi_flow_defect, psi_normal, ricci_trace_defect,
    ExampleSpec, PsiParams,
};
use prodform_geo::hypersurface::{ricci, shape_operator_default, unit_normal, ParamBox};
use prodform_geo::jacobi::{detq_closed_form, q_matrix, CaseParams, FrameShape};
use prodform_geo::sampling::{random_angle, random_shape, seeded, uniform};
use prodform_geo::spaceform::Kappa;

fn mean_curvature_at(spec: ExampleSpec, l: f64) -> f64 {
    let imm = build_example(&spec).unwrap();
    let rep = isoparametric_report(&imm, &ParamBox::cube(0.5).grid(2), &[l], 1e-6).unwrap();
    assert!(rep.pass, "{}", spec.label());
    rep.at(l).unwrap().h.mean
}

#[test]
fn parallel_curves_have_the_expected_curvature() {
    let l = 0.15;
    let r_circle = (0.5f64).atanh();
    let d_equi = (0.5f64).atanh();
    let cases = [
        (Kappa::Flat, 1.0, 1.0 / (1.0 - l)),
        (
            Kappa::Spherical,
            1.0,
            1.0 / (std::f64::consts::FRAC_PI_4 - l).tan(),
        ),
        (Kappa::Hyperbolic, 2.0, 1.0 / (r_circle - l).tanh()),
        (Kappa::Hyperbolic, 0.5, (d_equi - l).tanh()),
        (Kappa::Hyperbolic, 1.0, 1.0),
        (Kappa::Hyperbolic, 0.0, -l.tanh()),
        (Kappa::Flat, 0.0, 0.0),
    ];
    for (curve, k, want) in cases {
        for factor in Kappa::ALL {
            let a = mean_curvature_at(ExampleSpec::CurveTimesFactor { curve, factor, k }, l);
            let b = mean_curvature_at(ExampleSpec::FactorTimesCurve { factor, curve, k }, l);
            assert!((a - want).abs() < 1e-6, "{curve} k={k}: {a} vs {want}");
            assert!((b - want).abs() < 1e-6, "{curve} k={k}: {b} vs {want}");
        }
    }
}

#[test]
fn ricci_display_agrees_with_the_gauss_equation() {
    let imm = build_example(&ExampleSpec::Psi(PsiParams::default())).unwrap();
    for u in [[0.1, 0.2, -0.3], [-0.7, 0.5, 0.9], [0.0, 0.0, 0.0]] {
        let rec = shape_operator_default(&imm, &u).unwrap();
        let e = rec.basis;
        let h = rec.a.trace();
        for i in 0..3 {
            // Ric(e_i) = Σ_j R̄(e_i, e_j, e_j, e_i) + H A_ii − Σ_j A_ij²
            let ambient: f64 = (0..3)
                .map(|j| curvature_tensor(&e[i], &e[j], &e[j], &e[i]).unwrap())
                .sum();
            let a_sq: f64 = (0..3).map(|j| rec.a[(i, j)].powi(2)).sum();
            let gauss = ambient + h * rec.a[(i, i)] - a_sq;
            assert!((ricci(&e[i], &rec, &rec.normal) - gauss).abs() < 1e-10);
        }
        assert!(ricci_trace_defect(&imm, &u).unwrap() < 1e-8);
    }
}

#[test]
fn psi_normal_matches_the_numeric_normal() {
    let params = PsiParams::with_c(0.3);
    let imm = build_example(&ExampleSpec::Psi(params)).unwrap();
    for u in ParamBox::cube(1.0).grid(3) {
        let n = unit_normal(&imm, &u).unwrap();
        let want = psi_normal(&params, &u).unwrap();
        assert!((n.dot(&want) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn jacobi_flow_matches_numeric_parallel_maps() {
    let specs = [
        ExampleSpec::Psi(PsiParams::default()),
        ExampleSpec::CurveTimesFactor {
            curve: Kappa::Flat,
            factor: Kappa::Hyperbolic,
            k: 1.0,
        },
        ExampleSpec::FactorTimesCurve {
            factor: Kappa::Spherical,
            curve: Kappa::Hyperbolic,
            k: 2.0,
        },
    ];
    for spec in specs {
        let imm = build_example(&spec).unwrap();
        for l in [-0.2, -0.1, 0.1, 0.2] {
            let d = jacobi_flow_defect(&imm, &[0.4, -0.3, 0.2], l).unwrap();
            assert!(d < 1e-4, "{} at l={l}: {d:e}", spec.label());
        }
    }
}

#[test]
fn closed_form_det_matches_matrix_determinant() {
    let mut rng = seeded(5);
    for (k1, k2) in [
        (Kappa::Spherical, Kappa::Hyperbolic),
        (Kappa::Spherical, Kappa::Flat),
        (Kappa::Hyperbolic, Kappa::Flat),
    ] {
        for _ in 0..200 {
            let a: Matrix3<f64> = random_shape(&mut rng);
            let cp = CaseParams::new(k1, k2, random_angle(&mut rng)).unwrap();
            let fs = FrameShape::new(a, &cp).unwrap();
            let l = uniform(&mut rng, -1.0, 1.0);
            let q = q_matrix(&fs, &cp, l);
            assert!(
                (q.determinant() - detq_closed_form(&fs, &cp, l)).abs()
                    < 1e-12 * (1.0 + q.norm().powi(3))
            );
        }
    }
}

#[test]
fn psi_has_constant_principal_curvatures() {
    let imm = build_example(&ExampleSpec::Psi(PsiParams::default())).unwrap();
    let rep = isoparametric_report(&imm, &ParamBox::cube(1.0).grid(3), &[0.1], 1e-6).unwrap();
    assert!(rep.pass);
    let k = rep.at(0.0).unwrap().principal.map(|s| s.mean);
    let want = [0.0, 0.0, -(3.0f64).sqrt() / 2.0];
    for i in 0..3 {
        assert!((k[i] - want[i]).abs() < 1e-6, "{k:?}");
    }
}
