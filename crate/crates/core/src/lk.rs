//! The operators `L_k = Σᵢ μᵢ (eᵢeᵢ − ∇_{eᵢ}eᵢ)` on scalar and vector fields
//! of a rotational hypersurface, where `μᵢ` is `σ_k` of the principal
//! curvatures other than `kᵢ`.
//!
//! Two independent routes are provided. The closed route evaluates
//! `L_kG = −∇s_{k+1} − (s₁s_{k+1} − (k+2)s_{k+2})G` from the turning angle.
//! The numeric route applies the operator definition with central
//! differences in chart coordinates and gets the connection term by
//! projecting the second derivative of the immersion onto the tangent space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{adapted_frame, immerse, rotate, shape_spectrum_at, ChartPoint};
use crate::linalg::{add, axpy, dot, norm, scaled, sub};
use crate::profile::ProfileCurve;
use crate::scalar::Real;
use crate::symfunc::{closed_symmetric, closed_symmetric_derivative, grad_s_nm2, reduced_symmetric};

/// Default physical step before curvature scaling.
pub const BASE_STEP: f64 = 1e-4;
pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-3;

/// Finite-difference settings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FdOptions {
    /// Physical step along each principal direction; `None` picks
    /// `1e−4 / max|kᵢ|` clamped to `[1e−6, 1e−3]`.
    pub step: Option<f64>,
    /// Combine steps `h` and `h/2` by Richardson extrapolation.
    pub richardson: bool,
}

impl FdOptions {
    pub fn with_step(step: f64) -> Self {
        Self { step: Some(step), richardson: false }
    }

    pub fn extrapolated(step: Option<f64>) -> Self {
        Self { step, richardson: true }
    }
}

/// `L_kG` split into its tangential and normal parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LkGaussValue<T> {
    pub k: usize,
    pub vector: Vec<T>,
    pub tangential: Vec<T>,
    pub normal: Vec<T>,
    /// `c` with `normal = c·G`.
    pub normal_coefficient: T,
    /// `d s_{k+1}/dr` with `tangential = −(ds_{k+1}/dr)·e₁`.
    pub gradient: T,
}

fn check_order(k: usize, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    if k > n - 2 {
        return Err(Error::InvalidOrder { order: k, max: n - 2 });
    }
    Ok(())
}

fn assemble<T: Real>(k: usize, gradient: T, coefficient: T, e1: &[T], gauss: &[T]) -> LkGaussValue<T> {
    let tangential = scaled(e1, -gradient);
    let normal = scaled(gauss, coefficient);
    LkGaussValue { k, vector: add(&tangential, &normal), tangential, normal, normal_coefficient: coefficient, gradient }
}

/// Closed `L_kG` at the meridian point over `r` of a unit-speed profile.
pub fn lk_gauss_closed_order<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize, k: usize) -> Result<LkGaussValue<T>> {
    check_order(k, n)?;
    let jet = profile.unit_jet(r)?;
    let frame = adapted_frame(profile, &ChartPoint::meridian(r, n))?;
    let s = |m: usize| closed_symmetric(m, &jet, n);
    let coefficient = -(s(1) * s(k + 1) - T::from_count(k + 2) * s(k + 2));
    let gradient = closed_symmetric_derivative(k + 1, &jet, n);
    Ok(assemble(k, gradient, coefficient, &frame.e[0], &frame.gauss))
}

/// Closed `L_{n−3}G` using the stated gradient formula for `s_{n−2}` with
/// its recorded sign flag, and `σ` of the closed principal curvatures for
/// the normal coefficient.
pub fn lk_gauss_closed<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize) -> Result<LkGaussValue<T>> {
    check_order(n.saturating_sub(3), n)?;
    let k = n - 3;
    let grad = grad_s_nm2(profile, r, n)?;
    let jet = profile.unit_jet(r)?;
    let frame = adapted_frame(profile, &ChartPoint::meridian(r, n))?;
    let s = |m: usize| closed_symmetric(m, &jet, n);
    let coefficient = -(s(1) * s(n - 2) - T::from_count(n - 1) * s(n - 1));
    Ok(assemble(k, grad.derivative, coefficient, &grad.direction, &frame.gauss))
}

/// Closed `L_kG` at an arbitrary chart point, obtained by rotating the
/// meridian value with `Z(θ)`.
pub fn lk_gauss_closed_at<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>, k: usize) -> Result<LkGaussValue<T>> {
    let n = p.dimension();
    let base = lk_gauss_closed_order(profile, p.r, n, k)?;
    Ok(LkGaussValue {
        k,
        vector: rotate(&p.angles, &base.vector)?,
        tangential: rotate(&p.angles, &base.tangential)?,
        normal: rotate(&p.angles, &base.normal)?,
        normal_coefficient: base.normal_coefficient,
        gradient: base.gradient,
    })
}

/// Weights `μᵢ = σ_k(kⱼ : j ≠ i)` for the coordinate directions
/// `(∂_r, ∂_θ₁, …)`, which are principal.
pub fn principal_weights<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>, k: usize) -> Result<Vec<T>> {
    let n = p.dimension();
    check_order(k, n)?;
    let spectrum = shape_spectrum_at(profile, p)?;
    let kappas = spectrum.principal();
    (0..kappas.len()).map(|i| reduced_symmetric(i, k, &kappas)).collect()
}

fn resolve_step<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>, opts: &FdOptions) -> Result<f64> {
    let h = match opts.step {
        Some(h) => h,
        None => {
            let spectrum = shape_spectrum_at(profile, p)?;
            let scale = spectrum.principal().iter().fold(1.0f64, |m, v| m.max(v.as_f64().abs()));
            (BASE_STEP / scale).clamp(MIN_STEP, MAX_STEP)
        }
    };
    let floor = T::unit_roundoff().as_f64().sqrt().sqrt() * 1e-2;
    if !(h > floor) {
        return Err(Error::StepUnderflow { step: h });
    }
    Ok(h)
}

fn shifted<T: Real>(p: &ChartPoint<T>, axis: usize, delta: T) -> ChartPoint<T> {
    let mut q = p.clone();
    if axis == 0 {
        q.r = q.r + delta;
    } else {
        q.angles[axis - 1] = q.angles[axis - 1] + delta;
    }
    q
}

/// Coordinate step giving physical length `h` along axis `axis`.
fn coordinate_steps<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>, h: T) -> Result<Vec<T>> {
    let jet = profile.jet(p.r)?;
    let mut steps = vec![h / jet.speed()];
    for j in 0..p.angles.len() {
        let scale = jet.f[0] * crate::geometry::trailing_cos_product(&p.angles, j).abs();
        steps.push(h / scale);
    }
    Ok(steps)
}

fn lk_vector_single<T: Real>(
    profile: &ProfileCurve<T>,
    p: &ChartPoint<T>,
    weights: &[T],
    field: &impl Fn(&ChartPoint<T>) -> Result<Vec<T>>,
    h: T,
) -> Result<Vec<T>> {
    let dim = weights.len();
    let steps = coordinate_steps(profile, p, h)?;
    let two = T::lit(2.0);
    let f0 = field(p)?;
    let x0 = immerse(profile, p)?;
    let mut fd1 = Vec::with_capacity(dim);
    let mut fd2 = Vec::with_capacity(dim);
    let mut xd1 = Vec::with_capacity(dim);
    let mut xd2 = Vec::with_capacity(dim);
    for (axis, &d) in steps.iter().enumerate() {
        let plus = shifted(p, axis, d);
        let minus = shifted(p, axis, -d);
        let (fp, fm) = (field(&plus)?, field(&minus)?);
        let (xp, xm) = (immerse(profile, &plus)?, immerse(profile, &minus)?);
        let first = |a: &[T], b: &[T]| scaled(&sub(a, b), T::one() / (two * d));
        let second = |a: &[T], c: &[T], b: &[T]| scaled(&axpy(&add(a, b), -two, c), T::one() / (d * d));
        fd1.push(first(&fp, &fm));
        fd2.push(second(&fp, &f0, &fm));
        xd1.push(first(&xp, &xm));
        xd2.push(second(&xp, &x0, &xm));
    }
    let metric: Vec<T> = xd1.iter().map(|v| dot(v, v)).collect();
    let mut out = vec![T::zero(); f0.len()];
    for i in 0..dim {
        let mut hess = fd2[i].clone();
        for l in 0..dim {
            let gamma = dot(&xd2[i], &xd1[l]) / metric[l];
            hess = axpy(&hess, -gamma, &fd1[l]);
        }
        out = axpy(&out, weights[i] / metric[i], &hess);
    }
    Ok(out)
}

/// Numeric `L_k` applied componentwise to a vector field on the chart.
pub fn lk_vector_numeric<T: Real>(
    profile: &ProfileCurve<T>,
    p: &ChartPoint<T>,
    k: usize,
    field: &impl Fn(&ChartPoint<T>) -> Result<Vec<T>>,
    opts: &FdOptions,
) -> Result<Vec<T>> {
    let weights = principal_weights(profile, p, k)?;
    let h = T::lit(resolve_step(profile, p, opts)?);
    let coarse = lk_vector_single(profile, p, &weights, field, h)?;
    if !opts.richardson {
        return Ok(coarse);
    }
    let fine = lk_vector_single(profile, p, &weights, field, h * T::lit(0.5))?;
    Ok(coarse.iter().zip(&fine).map(|(&c, &f)| crate::fd::richardson(c, f)).collect())
}

/// Numeric `L_k` of a scalar field.
pub fn lk_scalar<T: Real>(
    profile: &ProfileCurve<T>,
    p: &ChartPoint<T>,
    k: usize,
    field: &impl Fn(&ChartPoint<T>) -> Result<T>,
    opts: &FdOptions,
) -> Result<T> {
    let wrapped = |q: &ChartPoint<T>| field(q).map(|v| vec![v]);
    Ok(lk_vector_numeric(profile, p, k, &wrapped, opts)?[0])
}

/// Numeric `L_kG`, with `G` recomputed by the cross product at every
/// stencil point.
pub fn lk_gauss_numeric<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>, k: usize, opts: &FdOptions) -> Result<Vec<T>> {
    let gauss = |q: &ChartPoint<T>| adapted_frame(profile, q).map(|f| f.gauss);
    lk_vector_numeric(profile, p, k, &gauss, opts)
}

/// Measured relation `L_kx ≈ c·G`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositionConstant<T> {
    pub k: usize,
    /// `⟨L_kx, G⟩`.
    pub c: T,
    /// `|L_kx − cG|`, the part of `L_kx` tangent to the hypersurface.
    pub residual: T,
    pub s_k: T,
    pub s_k1: T,
    /// `c / s_k`; `None` when `s_k` vanishes.
    pub ratio_s_k: Option<T>,
    /// `c / s_{k+1}`; `None` when `s_{k+1}` vanishes.
    pub ratio_s_k1: Option<T>,
    /// `c / ((k+1) s_{k+1})`; `None` when `s_{k+1}` vanishes.
    pub ratio_scaled: Option<T>,
}

/// Fits `c` in `L_kx = c·G` from the numeric operator on the position vector.
pub fn lk_position_constant<T: Real>(
    profile: &ProfileCurve<T>,
    p: &ChartPoint<T>,
    k: usize,
    opts: &FdOptions,
) -> Result<PositionConstant<T>> {
    let position = |q: &ChartPoint<T>| immerse(profile, q);
    let lx = lk_vector_numeric(profile, p, k, &position, opts)?;
    let gauss = adapted_frame(profile, p)?.gauss;
    let c = dot(&lx, &gauss);
    let residual = norm(&axpy(&lx, -c, &gauss));
    let spectrum = shape_spectrum_at(profile, p)?;
    let sigma = crate::symfunc::SymmetricFunctionSet::from_spectrum(&spectrum);
    let (s_k, s_k1) = (sigma.get(k), sigma.get(k + 1));
    let tiny = T::lit(1e-12);
    let ratio = |s: T| if s.abs() > tiny { Some(c / s) } else { None };
    let scaled_s = T::from_count(k + 1) * s_k1;
    Ok(PositionConstant {
        k,
        c,
        residual,
        s_k,
        s_k1,
        ratio_s_k: ratio(s_k),
        ratio_s_k1: ratio(s_k1),
        ratio_scaled: ratio(scaled_s),
    })
}

/// `max |a − b| / max(1, |a|)`.
pub fn relative_error<T: Real>(closed: &[T], numeric: &[T]) -> T {
    norm(&sub(closed, numeric)) / norm(closed).max(T::one())
}
