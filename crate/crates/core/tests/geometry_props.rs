mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rothyp::conventions::general_speed_mean;
use rothyp::geometry::{
    adapted_frame, fundamental_forms, immerse, immerse_matrix_form, rotation_matrix, shape_spectrum, shape_spectrum_at,
    ChartPoint,
};
use rothyp::linalg::Matrix;
use rothyp::profile::ProfileCurve;

fn profile(seed: u64) -> ProfileCurve<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if seed.is_multiple_of(2) {
        common::random_polynomial_profile(&mut rng)
    } else {
        common::random_fourier_profile(&mut rng)
    }
}

fn chart() -> impl Strategy<Value = (usize, f64, Vec<f64>)> {
    (3usize..=6).prop_flat_map(|n| (Just(n), 0.05f64..0.95, prop::collection::vec(-1.2f64..1.2, n - 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_is_orthonormal(seed in any::<u64>(), (n, r, angles) in chart()) {
        let frame = adapted_frame(&profile(seed), &ChartPoint::new(r, angles)).unwrap();
        let dev = frame.gram().sub(&Matrix::identity(n)).max_abs();
        prop_assert!(dev < 1e-10);
        prop_assert_eq!(frame.epsilon, if n % 2 == 1 { -1 } else { 1 });
    }

    #[test]
    fn rotation_is_orthogonal((n, _r, angles) in chart()) {
        let z = rotation_matrix(&angles, n).unwrap();
        prop_assert!(z.transpose().matmul(&z).sub(&Matrix::identity(n)).max_abs() < 1e-12);
        prop_assert!((z.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn immersion_forms_agree(seed in any::<u64>(), (_n, r, angles) in chart()) {
        let p = profile(seed);
        let c = ChartPoint::new(r, angles);
        let a = immerse(&p, &c).unwrap();
        let b = immerse_matrix_form(&p, &c).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_is_rotation_invariant(seed in any::<u64>(), (n, r, angles) in chart()) {
        let p = profile(seed);
        let meridian = shape_spectrum(&p, r, n).unwrap();
        let rotated = shape_spectrum_at(&p, &ChartPoint::new(r, angles)).unwrap();
        prop_assert!((meridian.k1 - rotated.k1).abs() < 1e-10);
        prop_assert!((meridian.kj - rotated.kj).abs() < 1e-10);
    }

    #[test]
    fn forms_are_diagonal_and_consistent(seed in any::<u64>(), (n, r, angles) in chart()) {
        let p = profile(seed);
        let c = ChartPoint::new(r, angles);
        let forms = fundamental_forms(&p, &c).unwrap();
        prop_assert!(forms.first.max_abs_off_diagonal() < 1e-12);
        prop_assert!(forms.second.max_abs_off_diagonal() < 1e-12);
        prop_assert!(forms.det_first > 0.0);
        let s = shape_spectrum_at(&p, &c).unwrap();
        let ratio = forms.det_second / forms.det_first;
        prop_assert!((ratio - s.gauss).abs() <= 1e-10 * s.gauss.abs().max(1e-300) + 1e-14);
        let trace: f64 = (0..n - 1).map(|i| forms.second[(i, i)] / forms.first[(i, i)]).sum();
        prop_assert!((trace / (n as f64 - 1.0) - s.mean).abs() <= 1e-10 * s.mean.abs().max(1.0));
        let k = s.k1 * s.kj.powi(n as i32 - 2);
        prop_assert!((k - s.gauss).abs() <= 1e-10 * k.abs().max(1.0));
    }

    /// The minimality residual is `(n−1) f |γ'|³ H` up to sign, so one vanishes iff the other does.
    #[test]
    fn ode_residual_tracks_mean_curvature(seed in any::<u64>(), n in 3usize..=6, r in 0.05f64..0.95, scale in 0.5f64..2.0) {
        let unit = profile(seed);
        let jet = unit.jet(r).unwrap();
        // Non-unit-speed line through the same point exercises the speed factors.
        let line = ProfileCurve::line(jet.f[0], jet.phi[0], scale * jet.f[1], scale * jet.phi[1], (r - 0.01, r + 0.01)).unwrap();
        for p in [&unit, &line] {
            let j = p.jet(r).unwrap();
            let [f, f1, f2, _] = j.f;
            let [_, p1, p2, _] = j.phi;
            let m = (n - 2) as f64;
            let residual = f * f1 * p2 + m * p1.powi(3) + (m * f1 * f1 - f * f2) * p1;
            let h = shape_spectrum(p, r, n).unwrap().mean;
            let v = j.speed();
            prop_assert!((residual.abs() - (n as f64 - 1.0) * f * v.powi(3) * h.abs()).abs() < 1e-10 * residual.abs().max(1.0));
            prop_assert!((general_speed_mean(&j, n) + h).abs() < 1e-10);
        }
    }
}

#[test]
fn sphere_immersion_has_constant_radius() {
    let rho = 1.7;
    let p = ProfileCurve::circle(rho, 0.0, (0.1, rho * std::f64::consts::PI - 0.1)).unwrap();
    let c = ChartPoint::new(1.0, vec![0.3, -0.9, 0.5]);
    let x = immerse(&p, &c).unwrap();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!((norm - rho).abs() < 1e-13);
}
