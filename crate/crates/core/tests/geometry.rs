use proptest::prelude::*;

use prodform_geo::ambient::{
    complex_structures, curvature_tensor, product_exp, product_structure, product_transport,
    product_velocity, ProductSpace, ProductVector,
};
use prodform_geo::sampling::{random_product_point, random_tangent, seeded};
use prodform_geo::spaceform::{exp_map, geodesic_velocity, Kappa, ModelPoint, ModelVector};

fn all_spaces() -> Vec<ProductSpace> {
    Kappa::ALL
        .iter()
        .flat_map(|a| Kappa::ALL.iter().map(move |b| ProductSpace::new(*a, *b)))
        .collect()
}

/// Largest ambient-coordinate difference.
fn gap(x: &ProductVector, y: &ProductVector) -> f64 {
    let d = *x - *y;
    d.first
        .raw()
        .iter()
        .chain(d.second.raw())
        .fold(0.0, |m, v| m.max(v.abs()))
}

/// Plain ambient-coordinate inner product, independent of the model code.
fn ambient_dot(kappa: Kappa, a: &[f64], b: &[f64]) -> f64 {
    match kappa {
        Kappa::Flat => a[0] * b[0] + a[1] * b[1],
        Kappa::Spherical => a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
        Kappa::Hyperbolic => -a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn structures_satisfy_their_algebra(seed in any::<u64>(), which in 0usize..9) {
        let space = all_spaces()[which];
        let mut rng = seeded(seed);
        let p = random_product_point(space, &mut rng);
        let x = random_tangent(&p, &mut rng);
        let y = random_tangent(&p, &mut rng);

        let px = product_structure(&x);
        prop_assert_eq!(product_structure(&px), x);
        prop_assert!((px.dot(&y) - product_structure(&y).dot(&x)).abs() < 1e-12);

        let (j1x, j2x) = complex_structures(&x);
        let (j1j1, _) = complex_structures(&j1x);
        let (_, j2j2) = complex_structures(&j2x);
        let (_, j2j1) = complex_structures(&j1x);
        let (j1j2, _) = complex_structures(&j2x);
        prop_assert!(gap(&j1j1, &-x) < 1e-12);
        prop_assert!(gap(&j2j2, &-x) < 1e-12);
        prop_assert!(gap(&px, &-j1j2) < 1e-12);
        prop_assert!(gap(&px, &-j2j1) < 1e-12);

        // J is an isometry and JX ⊥ X
        prop_assert!((j1x.dot(&j1x) - x.dot(&x)).abs() < 1e-12);
        prop_assert!(j1x.dot(&x).abs() < 1e-12);
    }

    #[test]
    fn curvature_tensor_has_product_symmetries(seed in any::<u64>(), which in 0usize..9) {
        let space = all_spaces()[which];
        let mut rng = seeded(seed);
        let p = random_product_point(space, &mut rng);
        let v: Vec<_> = (0..4).map(|_| random_tangent(&p, &mut rng)).collect();
        let r = |a: usize, b: usize, c: usize, d: usize| curvature_tensor(&v[a], &v[b], &v[c], &v[d]).unwrap();
        prop_assert!((r(0, 1, 2, 3) + r(1, 0, 2, 3)).abs() < 1e-12);
        prop_assert!((r(0, 1, 2, 3) + r(0, 1, 3, 2)).abs() < 1e-12);
        prop_assert!((r(0, 1, 2, 3) - r(2, 3, 0, 1)).abs() < 1e-12);
        // first Bianchi identity
        prop_assert!((r(0, 1, 2, 3) + r(1, 2, 0, 3) + r(2, 0, 1, 3)).abs() < 1e-12);
    }

    #[test]
    fn geodesics_stay_on_the_model_with_constant_speed(
        seed in any::<u64>(),
        k in 0usize..3,
        l in -2.0f64..2.0,
    ) {
        let kappa = Kappa::ALL[k];
        let mut rng = seeded(seed);
        let space = ProductSpace::new(kappa, kappa);
        let p = random_product_point(space, &mut rng);
        let x = random_tangent(&p, &mut rng);
        let q = exp_map(&p.first, &x.first, l);
        prop_assert!(q.constraint_residual() < 1e-9);
        let w = geodesic_velocity(&p.first, &x.first, l);
        prop_assert!((w.norm() - x.first.norm()).abs() < 1e-9);
        // velocity is tangent at the endpoint
        if kappa != Kappa::Flat {
            prop_assert!(ambient_dot(kappa, q.coords(), w.coords()).abs() < 1e-9);
        }
    }

    #[test]
    fn transport_is_an_isometry_fixing_the_velocity(seed in any::<u64>(), which in 0usize..9, l in -1.5f64..1.5) {
        let space = all_spaces()[which];
        let mut rng = seeded(seed);
        let p = random_product_point(space, &mut rng);
        let x = random_tangent(&p, &mut rng);
        let y = random_tangent(&p, &mut rng);
        let z = random_tangent(&p, &mut rng);
        let ty = product_transport(&p, &x, l, &y);
        let tz = product_transport(&p, &x, l, &z);
        prop_assert!((ty.dot(&tz) - y.dot(&z)).abs() < 1e-9);
        prop_assert!(gap(&product_transport(&p, &x, l, &x), &product_velocity(&p, &x, l)) < 1e-9);
        prop_assert!(ty.base().same_point(&product_exp(&p, &x, l)));
        // transport commutes with P
        prop_assert!(gap(&product_transport(&p, &x, l, &product_structure(&y)), &product_structure(&ty)) < 1e-9);
    }
}

#[test]
fn sectional_curvatures_on_coordinate_planes() {
    for space in all_spaces() {
        let (k1, k2) = space.kappas();
        let mut rng = seeded(11);
        for _ in 0..50 {
            let p = random_product_point(space, &mut rng);
            let e = p.frame();
            let sec = |a: usize, b: usize| curvature_tensor(&e[a], &e[b], &e[b], &e[a]).unwrap();
            assert!((sec(0, 1) - k1).abs() < 1e-12);
            assert!((sec(2, 3) - k2).abs() < 1e-12);
            for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
                assert!(sec(a, b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn sphere_geodesic_returns_after_a_full_turn() {
    let p = ModelPoint::origin(Kappa::Spherical);
    let v = ModelVector::projected(p, [0.0, 0.6, 0.8]);
    let q = exp_map(&p, &v, std::f64::consts::TAU);
    assert!(q.same_point(&p));
}

#[test]
fn hyperbolic_distance_along_geodesic() {
    // −⟨p, q⟩ = cosh d on the hyperboloid
    let p = ModelPoint::origin(Kappa::Hyperbolic);
    let v = ModelVector::projected(p, [0.0, 1.0, 0.0]);
    let q = exp_map(&p, &v, 1.3);
    let cosh_d = -ambient_dot(Kappa::Hyperbolic, p.coords(), q.coords());
    assert!((cosh_d - 1.3f64.cosh()).abs() < 1e-12);
}
