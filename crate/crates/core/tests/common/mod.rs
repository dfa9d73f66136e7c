#![allow(dead_code)]

use rand::Rng;
use rothyp::profile::{AngleFunction, ProfileCurve};
use rothyp::Real;

pub const DOMAIN: (f64, f64) = (0.0, 1.0);

/// Turning-angle profile on `(0, 1)` anchored at `f(0.5) = 2`, so `f > 1`.
/// The angle stays inside `(0.2, 1.4)` to keep `sin R` and `cos R` away from zero.
pub fn random_polynomial_profile<T: Real>(rng: &mut impl Rng) -> ProfileCurve<T> {
    let c0 = rng.random_range(0.5..1.0);
    let c1 = rng.random_range(-0.3..0.3);
    let c2 = rng.random_range(-0.2..0.2);
    let angle = AngleFunction::Polynomial(vec![T::lit(c0), T::lit(c1), T::lit(c2)]);
    ProfileCurve::turning_angle(angle, T::lit(0.5), T::lit(2.0), T::zero(), (T::lit(DOMAIN.0), T::lit(DOMAIN.1)))
        .expect("valid random profile")
}

pub fn random_fourier_profile<T: Real>(rng: &mut impl Rng) -> ProfileCurve<T> {
    let angle = AngleFunction::Fourier {
        omega: T::lit(rng.random_range(1.0..3.0)),
        constant: T::lit(rng.random_range(0.6..0.9)),
        cos: vec![T::lit(rng.random_range(-0.2..0.2))],
        sin: vec![T::lit(rng.random_range(-0.2..0.2))],
    };
    ProfileCurve::turning_angle(angle, T::lit(0.5), T::lit(2.0), T::zero(), (T::lit(DOMAIN.0), T::lit(DOMAIN.1)))
        .expect("valid random profile")
}

pub fn random_angles(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n - 2).map(|_| rng.random_range(-1.2..1.2)).collect()
}
