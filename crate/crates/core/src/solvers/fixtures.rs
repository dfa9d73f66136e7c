//! Named unit-speed profiles with their stated classification.

use serde::Serialize;

use crate::classifier::ClassificationCase;
use crate::error::{Error, Result};
use crate::profile::ProfileCurve;
use crate::scalar::Real;

pub const CYLINDER_RADIUS: f64 = 1.5;
pub const CONE_ANGLE: f64 = std::f64::consts::FRAC_PI_6;
pub const CONE_OFFSET: f64 = 0.5;
pub const SPHERE_RADIUS: f64 = 1.0;
pub const CATENOID_NECK: f64 = 1.0;
pub const PLANE_HEIGHT: f64 = 0.5;

#[derive(Clone, Debug, Serialize)]
pub struct Fixture<T> {
    pub name: &'static str,
    #[serde(skip)]
    pub profile: ProfileCurve<T>,
    pub expected: ClassificationCase,
}

/// Plane, cylinder, cone, sphere and catenoid, in that order.
pub fn fixture_profiles<T: Real>(n: usize) -> Result<Vec<Fixture<T>>> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    let l = T::lit;
    let rho = SPHERE_RADIUS;
    Ok(vec![
        Fixture {
            name: "plane",
            profile: ProfileCurve::plane(l(PLANE_HEIGHT), (l(0.5), l(2.0)))?,
            expected: ClassificationCase::Hyperplane,
        },
        Fixture {
            name: "cylinder",
            profile: ProfileCurve::cylinder(l(CYLINDER_RADIUS), (l(-1.0), l(1.0)))?,
            expected: ClassificationCase::CircularHypercylinder,
        },
        Fixture {
            name: "cone",
            profile: ProfileCurve::cone(l(CONE_ANGLE), l(CONE_OFFSET), (l(0.1), l(1.5)))?,
            expected: ClassificationCase::RightCircularHypercone,
        },
        Fixture {
            name: "sphere",
            profile: ProfileCurve::circle(l(rho), T::zero(), (l(0.1 * rho), l(std::f64::consts::PI * rho - 0.1 * rho)))?,
            expected: ClassificationCase::Hypersphere,
        },
        Fixture {
            name: "catenoid",
            profile: ProfileCurve::catenary_like(l(CATENOID_NECK), (l(-1.0), l(1.0)))?,
            expected: ClassificationCase::NotEigen,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_unit_speed() {
        for fx in fixture_profiles::<f64>(4).unwrap() {
            assert!(fx.profile.is_unit_speed(), "{}", fx.name);
        }
    }

    #[test]
    fn sphere_fixture_shape() {
        let fx = fixture_profiles::<f64>(3).unwrap();
        let (f, phi) = fx[3].profile.value(1.0).unwrap();
        assert!((f - 1f64.sin()).abs() < 1e-15 && (phi + 1f64.cos()).abs() < 1e-15);
    }
}
