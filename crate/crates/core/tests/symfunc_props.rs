mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rothyp::fd;
use rothyp::geometry::{shape_spectrum, shape_spectrum_at, ChartPoint};
use rothyp::profile::ProfileCurve;
use rothyp::symfunc::{
    elementary_symmetric, elementary_symmetric_by_subsets, newton_transform, newton_transform_values, reduced_symmetric,
    SymmetricFunctionSet,
};

fn profile(seed: u64) -> ProfileCurve<f64> {
    common::random_polynomial_profile(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn spectrum_values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 1..=12)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recurrence_matches_subsets(values in spectrum_values()) {
        for j in 0..=values.len() + 1 {
            prop_assert!(rel(elementary_symmetric(j, &values), elementary_symmetric_by_subsets(j, &values)) < 1e-12);
        }
    }

    #[test]
    fn split_by_membership(values in spectrum_values(), pick in any::<prop::sample::Index>()) {
        let i = pick.index(values.len());
        for j in 1..values.len() {
            let whole = elementary_symmetric(j, &values);
            let split = reduced_symmetric(i, j, &values).unwrap() + values[i] * reduced_symmetric(i, j - 1, &values).unwrap();
            prop_assert!(rel(split, whole) < 1e-12);
        }
    }

    #[test]
    fn newton_recursion_and_trace(values in spectrum_values()) {
        let len = values.len();
        let mut prev = newton_transform_values(0, &values).unwrap();
        prop_assert!(prev.diag.iter().all(|&d| d == 1.0));
        for k in 1..len {
            let p = newton_transform_values(k, &values).unwrap();
            prop_assert!(p.recursion_defect(&prev, &values) < 1e-12 * elementary_symmetric(k, &values).abs().max(1.0));
            prop_assert!(p.reduced_defect(&values) < 1e-12 * elementary_symmetric(k, &values).abs().max(1.0));
            let trace = (len - k) as f64 * elementary_symmetric(k, &values);
            prop_assert!(rel(p.trace(), trace) < 1e-12);
            prev = p;
        }
        prop_assert!(newton_transform_values(len, &values).is_err());
    }

    #[test]
    fn symmetric_set_matches_curvatures(seed in any::<u64>(), n in 3usize..=8, r in 0.05f64..0.95) {
        let s = shape_spectrum(&profile(seed), r, n).unwrap();
        let set = SymmetricFunctionSet::from_spectrum(&s);
        prop_assert!(rel(set.get(1), (n as f64 - 1.0) * s.mean) < 1e-10);
        prop_assert!(rel(set.get(n - 1), s.gauss) < 1e-10);
        prop_assert!(rel(set.mean_curvature(), s.mean) < 1e-10);
        for j in 0..n {
            prop_assert!(rel(set.get(j), elementary_symmetric_by_subsets(j, &s.principal())) < 1e-12);
        }
        let p = newton_transform(n - 2, &s).unwrap();
        prop_assert!(p.reduced_defect(&s.eigenvalues) < 1e-12);
    }

    /// `s_{n−2}` is constant along each angle direction.
    #[test]
    fn s_nm2_has_no_angular_gradient(seed in any::<u64>(), n in 3usize..=6, r in 0.1f64..0.9, angles in prop::collection::vec(-1.0f64..1.0, 4)) {
        let p = profile(seed);
        let angles = angles[..n - 2].to_vec();
        for j in 0..n - 2 {
            let g = |t: f64| {
                let mut a = angles.clone();
                a[j] = t;
                let s = shape_spectrum_at(&p, &ChartPoint::new(r, a))?;
                Ok(SymmetricFunctionSet::from_spectrum(&s).get(n - 2))
            };
            let d = fd::derivative(&g, angles[j], 1e-3).unwrap();
            prop_assert!(d.abs() < 1e-10);
        }
    }
}

#[test]
fn stated_examples() {
    assert_eq!(newton_transform_values(1, &[2.0, 3.0, 3.0]).unwrap().diag, vec![6.0, 5.0, 5.0]);
    assert_eq!(reduced_symmetric(0, 1, &[1.0, 2.0, 3.0]).unwrap(), 5.0);
    let sphere = ProfileCurve::circle(2.0f64, 0.0, (0.2, 6.0)).unwrap();
    let s = shape_spectrum(&sphere, 1.3, 5).unwrap();
    let set = SymmetricFunctionSet::from_spectrum(&s);
    assert!((set.get(4).abs() - 2f64.powi(-4)).abs() < 1e-12);
}
