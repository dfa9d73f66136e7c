//! Flat rotational hypersurfaces, `φ = c₁` or `φ = c₁ f + c₂`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::ProfileCurve;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatKind {
    /// `φ ≡ c₁`, `f = r`.
    Horizontal,
    /// `φ = c₁ f + c₂`, `f = r`.
    Affine,
}

/// Profile of a flat hypersurface over `domain` (which must keep `f = r > 0`).
pub fn flat_profile<T: Real>(kind: FlatKind, c1: T, c2: T, domain: (T, T)) -> Result<ProfileCurve<T>> {
    if !c1.is_finite() || !c2.is_finite() {
        return Err(Error::InvalidProfile("flat profile constants must be finite".into()));
    }
    match kind {
        FlatKind::Horizontal => ProfileCurve::plane(c1, domain),
        FlatKind::Affine if c1 == T::zero() => ProfileCurve::plane(c2, domain),
        FlatKind::Affine => ProfileCurve::line(T::zero(), c2, T::one(), c1, domain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shape_spectrum;

    #[test]
    fn horizontal_is_flat_and_minimal() {
        let p = flat_profile(FlatKind::Horizontal, 0.3f64, 0.0, (0.5, 2.0)).unwrap();
        let s = shape_spectrum(&p, 1.1, 5).unwrap();
        assert!(s.gauss.abs() < 1e-14 && s.mean.abs() < 1e-14);
    }

    #[test]
    fn affine_with_zero_slope_is_horizontal() {
        let p = flat_profile(FlatKind::Affine, 0.0, 0.7, (0.5, 2.0)).unwrap();
        assert_eq!(p.value(1.0).unwrap(), (1.0, 0.7));
    }

    #[test]
    fn cone_has_varying_mean_curvature() {
        let p = flat_profile(FlatKind::Affine, 1.0f64, 0.0, (0.5, 2.0)).unwrap();
        let a = shape_spectrum(&p, 0.8, 4).unwrap();
        let b = shape_spectrum(&p, 1.6, 4).unwrap();
        assert!(a.gauss.abs() < 1e-12 && b.gauss.abs() < 1e-12);
        assert!(a.mean.abs() > 1e-3 && (a.mean - b.mean).abs() > 1e-3);
    }

    #[test]
    fn non_finite_constants() {
        assert!(flat_profile(FlatKind::Affine, f64::NAN, 0.0, (0.5, 2.0)).is_err());
    }
}
