//! Minimal rotational hypersurfaces.
//!
//! In the graph parametrization `φ = φ(f)` with `p = dφ/df` the minimality
//! equation `f f'φ'' + (n−2)φ'³ + [(n−2)f'² − f f'']φ' = 0` becomes
//! `p' = −(n−2) p (1 + p²) / f`, with first integral
//! `p = ±1/√(c₁ f^{2(n−2)} − 1)` and neck `f = c₁^{−1/(2(n−2))}`. For `n ≥ 4`
//! the quadrature is `φ = ∓₂F₁(1/2, b; b+1; z) / ((n−3) √c₁ f^{n−3}) + c₂`
//! with `b = (n−3)/(2(n−2))` and `z = f^{4−2n}/c₁`; for `n = 3` it is the
//! catenoid `φ = ±acosh(√c₁ f)/√c₁ + c₂`.

use std::fmt::Write as _;

use serde::Serialize;

use super::hypergeometric::gauss_hypergeometric;
use super::ode::DormandPrince;
use crate::error::{Error, Result};
use crate::geometry::spectrum_from_jet;
use crate::profile::{ProfileCurve, ProfileJet};
use crate::scalar::Real;

/// Options of [`solve_minimal_profile`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MinimalOptions {
    /// Number of grid points, uniformly spaced in `f`.
    pub samples: usize,
    /// The start is moved to at least `(1 + neck_margin)` times the neck radius.
    pub neck_margin: f64,
    /// Absolute and relative tolerance of the integrator.
    pub tolerance: f64,
    pub c2: f64,
}

impl Default for MinimalOptions {
    fn default() -> Self {
        Self { samples: 64, neck_margin: 1e-2, tolerance: 1e-10, c2: 0.0 }
    }
}

/// One grid point of a minimal profile.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalSample<T> {
    /// Arc length from the start of the reachable range.
    pub r: T,
    pub f: T,
    pub phi: T,
    /// `dφ/df` from the integrator.
    pub slope: T,
    pub mean_curvature: T,
    pub gauss_curvature: T,
    /// Graph-form ODE residual with `φ''` taken from the first integral.
    pub ode_residual: T,
    /// Closed-form `φ` where it is defined.
    pub closed_phi: Option<T>,
}

/// A minimal profile sampled on its reachable range.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalProfileSolution<T> {
    pub n: usize,
    pub c1: f64,
    pub c2: f64,
    pub branch: i32,
    pub requested: (f64, f64),
    pub reachable: (f64, f64),
    /// The lower end was moved away from the neck.
    pub truncated: bool,
    /// Every grid point has a convergent closed form.
    pub hypergeometric_form_available: bool,
    pub grid: Vec<MinimalSample<T>>,
    pub max_abs_mean_curvature: f64,
    pub max_abs_gauss_curvature: f64,
    pub max_ode_residual: f64,
    /// Largest relative difference of numeric and closed-form `φ`.
    pub max_closed_form_error: Option<f64>,
    /// `n = 3`: largest relative difference from the catenary profile.
    pub max_catenoid_error: Option<f64>,
    pub options: MinimalOptions,
}

impl<T: Real> MinimalProfileSolution<T> {
    /// Grid as CSV with columns `r,f,phi,H,K`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,f,phi,H,K\n");
        for s in &self.grid {
            let _ = writeln!(
                out,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                s.r.as_f64(),
                s.f.as_f64(),
                s.phi.as_f64(),
                s.mean_curvature.as_f64(),
                s.gauss_curvature.as_f64()
            );
        }
        out
    }
}

/// Neck radius `c₁^{−1/(2(n−2))}`.
pub fn neck_radius(n: usize, c1: f64) -> f64 {
    c1.powf(-1.0 / (2.0 * (n as f64 - 2.0)))
}

/// Closed-form `φ(f)` of the minimal profile.
pub fn closed_minimal_phi<T: Real>(n: usize, c1: T, c2: T, branch: T, f: T) -> Result<T> {
    let root = c1.sqrt();
    if n == 3 {
        let x = root * f;
        if x < T::one() {
            return Err(Error::SeriesDivergence { z: (T::one() / (x * x)).as_f64() });
        }
        return Ok(branch * x.acosh() / root + c2);
    }
    let m = T::from_count(n - 2);
    let b = (m - T::one()) / (m + m);
    let z = f.powi(4 - 2 * n as i32) / c1;
    let h = gauss_hypergeometric(T::lit(0.5), b, b + T::one(), z)?;
    Ok(-branch * h.value / ((m - T::one()) * root * f.powi(n as i32 - 3)) + c2)
}

/// Integrates the minimal profile over `f ∈ f_range` on the given branch.
///
/// `c₁ = +∞` gives the horizontal hyperplane `φ ≡ c₂`.
pub fn solve_minimal_profile<T: Real>(
    n: usize,
    f_range: (f64, f64),
    c1: f64,
    branch: i32,
    options: MinimalOptions,
) -> Result<MinimalProfileSolution<T>> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    let (f0, f1) = f_range;
    if !(f0 > 0.0 && f1 > f0 && f1.is_finite()) {
        return Err(Error::InvalidProfile(format!("f range ({f0}, {f1}) must be positive and increasing")));
    }
    if !(c1 > 0.0) {
        return Err(Error::InvalidProfile(format!("c1 = {c1} must be positive")));
    }
    if branch != 1 && branch != -1 {
        return Err(Error::InvalidProfile(format!("branch must be +1 or -1, got {branch}")));
    }
    if options.samples < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: options.samples });
    }
    let plane = c1.is_infinite();
    let f_lo = if plane { f0 } else { f0.max(neck_radius(n, c1) * (1.0 + options.neck_margin)) };
    if f_lo >= f1 {
        return Err(Error::SingularProfile { r: f_lo, reason: "the requested range lies inside the neck" });
    }
    let m = T::from_count(n - 2);
    let c1t = T::lit(c1);
    let c2t = T::lit(options.c2);
    let sign = T::lit(f64::from(branch));
    let slope_at = |f: T| -> T {
        if plane {
            T::zero()
        } else {
            sign / (c1t * f.powi(2 * (n as i32 - 2)) - T::one()).sqrt()
        }
    };
    // State (φ, p, s) as functions of f.
    let rhs = |f: T, y: &[T]| -> Vec<T> {
        let p = y[1];
        vec![p, -m * p * (T::one() + p * p) / f, (T::one() + p * p).sqrt()]
    };
    let start = T::lit(f_lo);
    let phi_start = if plane { c2t } else { closed_minimal_phi(n, c1t, c2t, sign, start).unwrap_or(c2t) };
    let mut state = vec![phi_start, slope_at(start), T::zero()];
    let integrator = DormandPrince::with_tolerance(options.tolerance);
    let count = options.samples;
    let mut grid = Vec::with_capacity(count);
    let mut available = !plane;
    let mut prev = start;
    let zeros = vec![T::zero(); n - 2];
    for i in 0..count {
        let f = start + (T::lit(f1) - start) * T::lit(i as f64 / (count - 1) as f64);
        if i > 0 {
            state = integrator.integrate(&rhs, prev, &state, f)?.y;
        }
        prev = f;
        let (phi, p, s) = (state[0], state[1], state[2]);
        let (d1, d2) = if plane {
            (T::zero(), T::zero())
        } else {
            let e = 2 * n as i32 - 5;
            let d1 = -m * c1t * f.powi(e) * p * p * p;
            let d2 = -m * c1t * (T::from_count(2 * n - 5) * f.powi(e - 1) * p * p * p + T::lit(3.0) * f.powi(e) * p * p * d1);
            (d1, d2)
        };
        let jet = ProfileJet { f: [f, T::one(), T::zero(), T::zero()], phi: [phi, p, d1, d2] };
        let spectrum = spectrum_from_jet(&jet, &zeros, f)?;
        let residual = f * d1 + m * p * p * p + m * p;
        let closed_phi = if plane { None } else { closed_minimal_phi(n, c1t, c2t, sign, f).ok() };
        available &= closed_phi.is_some();
        grid.push(MinimalSample {
            r: s,
            f,
            phi,
            slope: p,
            mean_curvature: spectrum.mean,
            gauss_curvature: spectrum.gauss,
            ode_residual: residual,
            closed_phi,
        });
    }
    let max_of = |g: &dyn Fn(&MinimalSample<T>) -> f64| grid.iter().map(g).fold(0.0, f64::max);
    let max_abs_mean_curvature = max_of(&|s| s.mean_curvature.as_f64().abs());
    let max_abs_gauss_curvature = max_of(&|s| s.gauss_curvature.as_f64().abs());
    let max_ode_residual = max_of(&|s| s.ode_residual.as_f64().abs());
    let max_closed_form_error = if grid.iter().any(|s| s.closed_phi.is_some()) {
        Some(max_of(&|s| match s.closed_phi {
            Some(c) => ((s.phi - c).abs() / c.abs().max(T::min_positive_value())).as_f64(),
            None => 0.0,
        }))
    } else {
        None
    };
    let max_catenoid_error = if n == 3 && !plane {
        let neck = T::one() / c1t.sqrt();
        let catenary = ProfileCurve::catenary_like(neck, (-T::lit(f1) * T::lit(2.0), T::lit(f1) * T::lit(2.0)))?;
        let mut worst = 0.0f64;
        for s in &grid {
            let arc = (s.f * s.f - neck * neck).sqrt();
            let (fc, phic) = catenary.value(arc)?;
            let target = sign * phic + c2t;
            let err = ((s.phi - target).abs() / target.abs().max(T::one())).max((s.f - fc).abs() / fc);
            worst = worst.max(err.as_f64());
        }
        Some(worst)
    } else {
        None
    };
    Ok(MinimalProfileSolution {
        n,
        c1,
        c2: options.c2,
        branch,
        requested: f_range,
        reachable: (f_lo, f1),
        truncated: f_lo > f0,
        hypergeometric_form_available: available,
        grid,
        max_abs_mean_curvature,
        max_abs_gauss_curvature,
        max_ode_residual,
        max_closed_form_error,
        max_catenoid_error,
        options,
    })
}
