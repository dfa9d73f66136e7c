mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rothyp::geometry::{rotation_matrix, shape_spectrum, ChartPoint};
use rothyp::lk::{lk_gauss_closed, lk_gauss_closed_at, lk_gauss_numeric, relative_error, FdOptions};
use rothyp::profile::ProfileCurve;
use rothyp::solvers::{flat_profile, FlatKind};
use rothyp::symfunc::SymmetricFunctionSet;

fn profile(seed: u64) -> ProfileCurve<f64> {
    common::random_polynomial_profile(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_and_numeric_agree(seed in any::<u64>(), n in 3usize..=6, r in 0.2f64..0.8, angles in prop::collection::vec(-1.0f64..1.0, 4)) {
        let p = profile(seed);
        let c = ChartPoint::new(r, angles[..n - 2].to_vec());
        let closed = lk_gauss_closed_at(&p, &c, n - 3).unwrap().vector;
        let numeric = lk_gauss_numeric(&p, &c, n - 3, &FdOptions::extrapolated(Some(1e-4))).unwrap();
        prop_assert!(relative_error(&closed, &numeric) < 1e-4);
    }

    #[test]
    fn rotational_equivariance(seed in any::<u64>(), n in 3usize..=6, r in 0.2f64..0.8, a in prop::collection::vec(-1.0f64..1.0, 4), b in prop::collection::vec(-1.0f64..1.0, 4)) {
        let p = profile(seed);
        let (a, b) = (a[..n - 2].to_vec(), b[..n - 2].to_vec());
        let la = lk_gauss_closed_at(&p, &ChartPoint::new(r, a.clone()), n - 3).unwrap().vector;
        let lb = lk_gauss_closed_at(&p, &ChartPoint::new(r, b.clone()), n - 3).unwrap().vector;
        let map = rotation_matrix(&a, n).unwrap().matmul(&rotation_matrix(&b, n).unwrap().transpose());
        let mapped = map.mul_vec(&lb);
        prop_assert!(relative_error(&la, &mapped) < 1e-8);
    }

    /// Flat profiles: the normal coefficient is `−s₁ s_{n−2}`.
    #[test]
    fn flat_normal_coefficient(n in 3usize..=7, c1 in -2.0f64..2.0, r in 0.7f64..1.8) {
        let slope = c1;
        let norm = (1.0 + slope * slope).sqrt();
        // Unit-speed parametrization of φ = c₁ f + c₂ through f = 0.5.
        let p = ProfileCurve::line(0.5, 0.1, 1.0 / norm, slope / norm, (0.0, 2.0)).unwrap();
        let v = lk_gauss_closed(&p, r, n).unwrap();
        let s = SymmetricFunctionSet::from_spectrum(&shape_spectrum(&p, r, n).unwrap());
        prop_assert!((v.normal_coefficient + s.get(1) * s.get(n - 2)).abs() < 1e-8);
        let q = flat_profile(FlatKind::Affine, c1, 0.1, (0.5, 2.0)).unwrap();
        prop_assert!(shape_spectrum(&q, r.max(0.6), n).unwrap().gauss.abs() < 1e-10);
    }
}

/// The catenoid is minimal: the normal coefficient is `(n−1) s_{n−1}`.
#[test]
fn minimal_normal_coefficient() {
    let n = 3;
    let p = ProfileCurve::catenary_like(1.0f64, (-1.0, 1.0)).unwrap();
    for r in p.sample_points(20, 0.05) {
        let v = lk_gauss_closed(&p, r, n).unwrap();
        let s = SymmetricFunctionSet::from_spectrum(&shape_spectrum(&p, r, n).unwrap());
        assert!((v.normal_coefficient - 2.0 * s.get(2)).abs() < 1e-6);
    }
}
