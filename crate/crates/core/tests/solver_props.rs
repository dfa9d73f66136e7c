use proptest::prelude::*;
use rothyp::geometry::shape_spectrum;
use rothyp::solvers::{fixture_profiles, flat_profile, gauss_hypergeometric, solve_minimal_profile, FlatKind, MinimalOptions};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hypergeometric_symmetry(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0, z in -0.9f64..0.9) {
        let x = gauss_hypergeometric(a, b, c, z).unwrap();
        let y = gauss_hypergeometric(b, a, c, z).unwrap();
        prop_assert!((x.value - y.value).abs() <= 1e-12 * x.value.abs().max(1.0));
    }

    #[test]
    fn flat_profiles_are_flat(n in 3usize..=8, c1 in -3.0f64..3.0, c2 in -1.0f64..1.0, affine in any::<bool>()) {
        let kind = if affine { FlatKind::Affine } else { FlatKind::Horizontal };
        let p = flat_profile(kind, c1, c2, (0.5, 2.0)).unwrap();
        for r in p.sample_points(16, 0.02) {
            prop_assert!(shape_spectrum(&p, r, n).unwrap().gauss.abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn minimal_profiles_are_minimal(n in 3usize..=6, c1 in 0.5f64..4.0, positive in any::<bool>()) {
        let branch = if positive { 1 } else { -1 };
        let opts = MinimalOptions { samples: 24, ..MinimalOptions::default() };
        let sol = solve_minimal_profile::<f64>(n, (0.8, 3.0), c1, branch, opts).unwrap();
        prop_assert!(sol.max_abs_mean_curvature < 1e-6);
        prop_assert!(sol.max_ode_residual < 1e-8);
        if n >= 4 {
            prop_assert!(sol.max_closed_form_error.unwrap() < 1e-6);
        } else {
            prop_assert!(sol.max_catenoid_error.unwrap() < 1e-6);
        }
    }
}

#[test]
fn fixtures_are_regular_unit_speed() {
    for n in 3..=8 {
        for fx in fixture_profiles::<f64>(n).unwrap() {
            assert!(fx.profile.is_unit_speed(), "{}", fx.name);
            for r in fx.profile.sample_points(16, 1e-3) {
                assert!(fx.profile.value(r).unwrap().0 > 0.0);
            }
        }
    }
}
