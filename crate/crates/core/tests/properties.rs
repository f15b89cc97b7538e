use levy_heat::acceptance::{density_normalization, model_properties};
use levy_heat::geometry::Shape;
use levy_heat::heat::heat_content_quadrature;
use levy_heat::levy::{LevyModel, Profile};
use proptest::prelude::*;

fn isotropic_model() -> impl Strategy<Value = LevyModel> {
    let dim = 1usize..=2;
    prop_oneof![
        (dim.clone(), 0.1f64..5.0).prop_map(|(d, eta)| LevyModel::brownian(d, eta).unwrap()),
        (dim.clone(), 0.2f64..1.95, 0.1f64..5.0).prop_map(|(d, a, c)| LevyModel::isotropic_stable(d, a, c).unwrap()),
        (dim, 0.1f64..2.0, 0.1f64..2.0, 0.3f64..1.9)
            .prop_map(|(d, eta, c, a)| LevyModel::brownian_plus_stable(d, eta, c, a).unwrap()),
        (0.3f64..1.9, 0.1f64..3.0).prop_map(|(a, c)| LevyModel::discrete_dyadic(a, c).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn exponent_invariants_hold(model in isotropic_model()) {
        let bad = model_properties(&model);
        prop_assert!(bad.is_empty(), "{:?}: {:?}", model.spec(), bad);
    }

    #[test]
    fn nonsymmetric_h_is_doubling(alpha in 0.3f64..1.9, c1 in 0.1f64..2.0, c2 in 0.0f64..2.0, gamma in -1.0f64..1.0) {
        let model = LevyModel::asym_stable_1d(alpha, c1, c2, gamma).unwrap();
        let bad = model_properties(&model);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn stable_scaling_of_heat_content(alpha in 1.1f64..1.9, lambda in 0.5f64..2.0, t in 1e-3f64..1e-1) {
        // H_{λΩ}(t) = λ H_Ω(λ^{-α} t) in one dimension
        let model = LevyModel::isotropic_stable(1, alpha, 1.0).unwrap();
        let big = heat_content_quadrature(&model, &Shape::interval(0.0, lambda).unwrap(), t).unwrap().value;
        let small = heat_content_quadrature(&model, &Shape::interval(0.0, 1.0).unwrap(), t * lambda.powf(-alpha)).unwrap().value;
        prop_assert!((big - lambda * small).abs() <= 1e-7 * big, "{big} vs {}", lambda * small);
    }

    #[test]
    fn heat_content_is_bounded_and_increasing(alpha in 0.4f64..1.95, t in 1e-4f64..0.5) {
        let model = LevyModel::isotropic_stable(1, alpha, 1.0).unwrap();
        let shape = Shape::interval(-0.5, 0.5).unwrap();
        let h1 = heat_content_quadrature(&model, &shape, t).unwrap().value;
        let h2 = heat_content_quadrature(&model, &shape, 1.5 * t).unwrap().value;
        prop_assert!(h1 > 0.0 && h1 < shape.volume());
        prop_assert!(h2 >= h1 * (1.0 - 1e-9), "H({}) = {h2} < H({t}) = {h1}", 1.5 * t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn stable_density_integrates_to_one(dim in 1usize..=2, alpha in 0.3f64..1.95, t in 0.01f64..1.0) {
        let model = LevyModel::isotropic_stable(dim, alpha, 1.0).unwrap();
        let bad = density_normalization(&model, t);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn tempered_density_integrates_to_one(alpha in 0.5f64..1.8, t in 0.05f64..0.5) {
        let model = LevyModel::radial(1, Profile::Tempered, alpha, 1.0).unwrap();
        let bad = density_normalization(&model, t);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
