//! The rotational hypersurface `x(r, θ) = Z(θ)·γ(r)ᵀ` and its pointwise
//! geometry: adapted frame, Gauss map, fundamental forms and curvatures.
//!
//! Angles are 0-based here: `angles[l]` is `θ_{l+1}`. The unit vector
//! `u(θ) ∈ Sⁿ⁻²` has components
//! `u₀ = Πₗ cos θₗ` and `uₖ = sin θₖ₋₁ · Π_{l≥k} cos θₗ`, so that
//! `x = (f·u, φ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, generalized_cross, generalized_symmetric_eigen, norm, scaled, Matrix};
use crate::profile::{ProfileCurve, ProfileJet};
use crate::scalar::{epsilon_sign, Real};

/// Charts with `|cos θᵢ| <` this value for `i ≥ 2` are rejected.
pub const CHART_COS_TOL: f64 = 1e-9;

/// Chart coordinates `(r, θ₁, …, θₙ₋₂)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartPoint<T> {
    pub r: T,
    pub angles: Vec<T>,
}

impl<T: Real> ChartPoint<T> {
    pub fn new(r: T, angles: Vec<T>) -> Self {
        Self { r, angles }
    }

    /// The point on the meridian through `θ = 0`.
    pub fn meridian(r: T, n: usize) -> Self {
        Self { r, angles: vec![T::zero(); n.saturating_sub(2)] }
    }

    /// Ambient dimension implied by the number of angles.
    pub fn dimension(&self) -> usize {
        self.angles.len() + 2
    }

    fn validate(&self, n: usize) -> Result<()> {
        check_dimension(n)?;
        if self.angles.len() != n - 2 {
            return Err(Error::AngleCount { expected: n - 2, got: self.angles.len() });
        }
        if !self.r.is_finite() || self.angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFiniteChart);
        }
        Ok(())
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidDimension { n, min: 3 })
    } else {
        Ok(())
    }
}

/// Rejects charts where one of `cos θ₂, …, cos θₙ₋₂` nearly vanishes.
pub fn check_chart_regular<T: Real>(angles: &[T]) -> Result<()> {
    for (l, a) in angles.iter().enumerate().skip(1) {
        let c = a.cos().abs();
        if c.as_f64() < CHART_COS_TOL {
            return Err(Error::DegenerateChart { index: l + 1, cos: c.as_f64() });
        }
    }
    Ok(())
}

/// `Pⱼ = Π_{l>j} cos θₗ`, the metric factor of `θⱼ` divided by `f`.
pub fn trailing_cos_product<T: Real>(angles: &[T], j: usize) -> T {
    angles.iter().skip(j + 1).fold(T::one(), |acc, a| acc * a.cos())
}

/// The `n × n` rotation fixing the `xₙ` axis, assembled entrywise from its
/// block formula. Column 0 is `(u, 0)`, column `j + 1` is `(∂ⱼu / Pⱼ, 0)` and
/// the last column is `êₙ`.
pub fn rotation_matrix<T: Real>(angles: &[T], n: usize) -> Result<Matrix<T>> {
    check_dimension(n)?;
    if angles.len() != n - 2 {
        return Err(Error::AngleCount { expected: n - 2, got: angles.len() });
    }
    let m = n - 2;
    let c: Vec<T> = angles.iter().map(|a| a.cos()).collect();
    let s: Vec<T> = angles.iter().map(|a| a.sin()).collect();
    let prod = |lo: usize, hi: usize| (lo..hi).fold(T::one(), |acc, l| acc * c[l]);
    let mut z = Matrix::zeros(n, n);
    z[(0, 0)] = prod(0, m);
    for i in 1..=m {
        z[(i, 0)] = s[i - 1] * prod(i, m);
    }
    for j in 0..m {
        let col = j + 1;
        z[(0, col)] = -s[j] * prod(0, j);
        for i in 1..=j {
            z[(i, col)] = -s[i - 1] * prod(i, j) * s[j];
        }
        z[(j + 1, col)] = c[j];
    }
    z[(n - 1, n - 1)] = T::one();
    Ok(z)
}

/// The unit vector `u(θ)` of length `angles.len() + 1`.
pub fn sphere_direction<T: Real>(angles: &[T]) -> Vec<T> {
    direction_partial(angles, &vec![0; angles.len()])
}

/// Mixed partial `∂^{orders} u`, where `orders[l]` is the number of
/// differentiations with respect to `θₗ`.
pub fn direction_partial<T: Real>(angles: &[T], orders: &[usize]) -> Vec<T> {
    let m = angles.len();
    // d^k/dθ^k of cos and sin, k taken mod 4.
    let dcos = |a: T, k: usize| match k % 4 {
        0 => a.cos(),
        1 => -a.sin(),
        2 => -a.cos(),
        _ => a.sin(),
    };
    let dsin = |a: T, k: usize| match k % 4 {
        0 => a.sin(),
        1 => a.cos(),
        2 => -a.sin(),
        _ => -a.cos(),
    };
    (0..=m)
        .map(|k| {
            let mut v = T::one();
            for l in 0..m {
                let d = orders[l];
                let factor = if k >= 1 && l + 1 == k {
                    dsin(angles[l], d)
                } else if k == 0 || l + 1 > k {
                    dcos(angles[l], d)
                } else if d == 0 {
                    T::one()
                } else {
                    T::zero()
                };
                v = v * factor;
            }
            v
        })
        .collect()
}

fn unit_orders(m: usize, which: &[usize]) -> Vec<usize> {
    let mut o = vec![0; m];
    for &w in which {
        o[w] += 1;
    }
    o
}

fn lift<T: Real>(u: &[T], scale: T, last: T) -> Vec<T> {
    let mut v: Vec<T> = u.iter().map(|&x| x * scale).collect();
    v.push(last);
    v
}

/// The immersion in the product-of-cosines form `(f·u(θ), φ)`.
pub fn immerse<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>) -> Result<Vec<T>> {
    p.validate(p.dimension())?;
    let (f, phi) = profile.value(p.r)?;
    Ok(lift(&sphere_direction(&p.angles), f, phi))
}

/// The immersion as `Z(θ)·(f, 0, …, 0, φ)ᵀ`.
pub fn immerse_matrix_form<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>) -> Result<Vec<T>> {
    let n = p.dimension();
    p.validate(n)?;
    let (f, phi) = profile.value(p.r)?;
    let mut gamma = vec![T::zero(); n];
    gamma[0] = f;
    gamma[n - 1] = phi;
    Ok(rotation_matrix(&p.angles, n)?.mul_vec(&gamma))
}

/// First and second chart partials of the immersion.
#[derive(Clone, Debug)]
pub struct ChartDerivatives<T> {
    /// `x_r, x_θ₁, …, x_θₙ₋₂`.
    pub first: Vec<Vec<T>>,
    /// `second[a][b] = ∂_a ∂_b x` in the same coordinate order.
    pub second: Vec<Vec<Vec<T>>>,
}

/// Analytic chart partials from a profile jet.
pub fn chart_derivatives<T: Real>(jet: &ProfileJet<T>, angles: &[T]) -> ChartDerivatives<T> {
    let m = angles.len();
    let dim = m + 1;
    let zero = T::zero();
    let u = sphere_direction(angles);
    let du: Vec<Vec<T>> = (0..m).map(|j| direction_partial(angles, &unit_orders(m, &[j]))).collect();
    let mut first = Vec::with_capacity(dim);
    first.push(lift(&u, jet.f[1], jet.phi[1]));
    for d in &du {
        first.push(lift(d, jet.f[0], zero));
    }
    let mut second = vec![vec![Vec::new(); dim]; dim];
    second[0][0] = lift(&u, jet.f[2], jet.phi[2]);
    for j in 0..m {
        let v = lift(&du[j], jet.f[1], zero);
        second[0][j + 1] = v.clone();
        second[j + 1][0] = v;
        for i in j..m {
            let v = lift(&direction_partial(angles, &unit_orders(m, &[i, j])), jet.f[0], zero);
            second[i + 1][j + 1] = v.clone();
            second[j + 1][i + 1] = v;
        }
    }
    ChartDerivatives { first, second }
}

/// Orthonormal frame `{e₁, …, eₙ₋₁}` with Gauss map `G = e₁ × ⋯ × eₙ₋₁`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameSample<T> {
    pub e: Vec<Vec<T>>,
    pub gauss: Vec<T>,
    /// `−1` for odd `n`, `+1` for even `n`.
    pub epsilon: i32,
}

impl<T: Real> FrameSample<T> {
    pub fn dimension(&self) -> usize {
        self.gauss.len()
    }

    /// Gram matrix of `{e₁, …, eₙ₋₁, G}`.
    pub fn gram(&self) -> Matrix<T> {
        let all: Vec<&Vec<T>> = self.e.iter().chain(std::iter::once(&self.gauss)).collect();
        let n = all.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = dot(all[i], all[j]);
            }
        }
        g
    }
}

/// Adapted frame at a chart point: `e₁ = x_r/|x_r|` and
/// `e_{j+1} = x_θⱼ/(f·Pⱼ)`, which is column `j + 1` of `Z(θ)`.
pub fn adapted_frame<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>) -> Result<FrameSample<T>> {
    p.validate(p.dimension())?;
    frame_from_jet(&profile.jet(p.r)?, &p.angles, p.r)
}

pub(crate) fn frame_from_jet<T: Real>(jet: &ProfileJet<T>, angles: &[T], r: T) -> Result<FrameSample<T>> {
    check_chart_regular(angles)?;
    let n = angles.len() + 2;
    let v = jet.speed();
    if !(v > T::zero()) {
        return Err(Error::SingularProfile { r: r.as_f64(), reason: "f'^2 + phi'^2 = 0" });
    }
    if !(jet.f[0] > T::zero()) {
        return Err(Error::SingularProfile { r: r.as_f64(), reason: "f <= 0" });
    }
    let m = angles.len();
    let u = sphere_direction(angles);
    let mut e = Vec::with_capacity(n - 1);
    e.push(lift(&u, jet.f[1] / v, jet.phi[1] / v));
    for j in 0..m {
        let d = direction_partial(angles, &unit_orders(m, &[j]));
        e.push(lift(&d, T::one() / trailing_cos_product(angles, j), T::zero()));
    }
    let gauss = generalized_cross(&e);
    Ok(FrameSample { e, gauss, epsilon: epsilon_sign(n) })
}

/// First and second fundamental forms in chart coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FundamentalForms<T> {
    pub first: Matrix<T>,
    pub second: Matrix<T>,
    /// Product of the diagonal of `first`.
    pub det_first: T,
    /// Product of the diagonal of `second`.
    pub det_second: T,
}

pub fn fundamental_forms<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>) -> Result<FundamentalForms<T>> {
    p.validate(p.dimension())?;
    forms_from_jet(&profile.jet(p.r)?, &p.angles, p.r)
}

/// Fundamental forms assembled from an explicit jet (any parametrization).
pub fn forms_from_jet<T: Real>(jet: &ProfileJet<T>, angles: &[T], r: T) -> Result<FundamentalForms<T>> {
    let frame = frame_from_jet(jet, angles, r)?;
    let d = chart_derivatives(jet, angles);
    let dim = d.first.len();
    let mut first = Matrix::zeros(dim, dim);
    let mut second = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            first[(a, b)] = dot(&d.first[a], &d.first[b]);
            second[(a, b)] = dot(&d.second[a][b], &frame.gauss);
        }
    }
    let det_first = first.diagonal().into_iter().fold(T::one(), |a, b| a * b);
    let det_second = second.diagonal().into_iter().fold(T::one(), |a, b| a * b);
    Ok(FundamentalForms { first, second, det_first, det_second })
}

/// Principal curvatures of a rotational hypersurface.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureSpectrum<T> {
    /// Meridian curvature.
    pub k1: T,
    /// Common value of `k₂ = ⋯ = kₙ₋₁`.
    pub kj: T,
    pub n: usize,
    /// Mean curvature `trace(S)/(n − 1)`.
    pub mean: T,
    /// Gauss–Kronecker curvature `det S`.
    pub gauss: T,
    /// Eigenvalues of `I⁻¹·II` with the meridian one first.
    pub eigenvalues: Vec<T>,
}

impl<T: Real> CurvatureSpectrum<T> {
    /// Builds a spectrum from `(k₁, kⱼ)` directly.
    pub fn from_principal(k1: T, kj: T, n: usize) -> Self {
        let mut eigenvalues = vec![k1];
        eigenvalues.extend(std::iter::repeat_n(kj, n - 2));
        let sum = eigenvalues.iter().fold(T::zero(), |a, &b| a + b);
        let prod = eigenvalues.iter().fold(T::one(), |a, &b| a * b);
        Self { k1, kj, n, mean: sum / T::from_count(n - 1), gauss: prod, eigenvalues }
    }

    /// The principal-curvature multiset `(k₁, kⱼ, …, kⱼ)`.
    pub fn principal(&self) -> Vec<T> {
        let mut v = vec![self.k1];
        v.extend(std::iter::repeat_n(self.kj, self.n - 2));
        v
    }
}

/// Curvatures at parameter `r`, evaluated on the meridian `θ = 0`.
pub fn shape_spectrum<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize) -> Result<CurvatureSpectrum<T>> {
    shape_spectrum_at(profile, &ChartPoint::meridian(r, n))
}

/// Curvatures at an arbitrary chart point.
pub fn shape_spectrum_at<T: Real>(profile: &ProfileCurve<T>, p: &ChartPoint<T>) -> Result<CurvatureSpectrum<T>> {
    p.validate(p.dimension())?;
    spectrum_from_jet(&profile.jet(p.r)?, &p.angles, p.r)
}

/// Eigenvalues of `I⁻¹·II` assembled from a jet. The meridian curvature is
/// the eigenvalue whose eigenvector has the largest `∂_r` component.
pub fn spectrum_from_jet<T: Real>(jet: &ProfileJet<T>, angles: &[T], r: T) -> Result<CurvatureSpectrum<T>> {
    let n = angles.len() + 2;
    let forms = forms_from_jet(jet, angles, r)?;
    let eig = generalized_symmetric_eigen(&forms.second, &forms.first)
        .ok_or(Error::SingularProfile { r: r.as_f64(), reason: "first fundamental form is not positive definite" })?;
    let g11 = forms.first[(0, 0)].sqrt();
    let mut best = 0;
    let mut weight = T::zero();
    for j in 0..eig.values.len() {
        let w = (eig.vectors[(0, j)] * g11).abs();
        if w > weight {
            weight = w;
            best = j;
        }
    }
    let k1 = eig.values[best];
    let mut eigenvalues = vec![k1];
    let mut sum_rest = T::zero();
    for (j, &v) in eig.values.iter().enumerate() {
        if j != best {
            eigenvalues.push(v);
            sum_rest = sum_rest + v;
        }
    }
    let kj = sum_rest / T::from_count(n - 2);
    let sum = eigenvalues.iter().fold(T::zero(), |a, &b| a + b);
    let prod = eigenvalues.iter().fold(T::one(), |a, &b| a * b);
    Ok(CurvatureSpectrum { k1, kj, n, mean: sum / T::from_count(n - 1), gauss: prod, eigenvalues })
}

/// Unit-speed closed forms of the principal curvatures with respect to the
/// cross-product Gauss map: `k₁ = −ε R'`, `kⱼ = −ε sin R / f`.
pub fn closed_principal<T: Real>(jet: &ProfileJet<T>, n: usize) -> (T, T) {
    let eps = T::lit(f64::from(epsilon_sign(n)));
    let t = jet.turning();
    (-eps * t.d1, -eps * t.sin / jet.f[0])
}

/// `Z(θ)·v`.
pub fn rotate<T: Real>(angles: &[T], v: &[T]) -> Result<Vec<T>> {
    Ok(rotation_matrix(angles, v.len())?.mul_vec(v))
}

/// Ambient unit normal expressed in closed form, `ε(φ'u, −f')/|γ'|`.
pub fn closed_gauss<T: Real>(jet: &ProfileJet<T>, angles: &[T]) -> Vec<T> {
    let n = angles.len() + 2;
    let eps = T::lit(f64::from(epsilon_sign(n)));
    let v = jet.speed();
    let u = sphere_direction(angles);
    scaled(&lift(&u, jet.phi[1] / v, -jet.f[1] / v), eps)
}

/// `|x|` helper used by tests and diagnostics.
pub fn euclidean_norm<T: Real>(x: &[T]) -> T {
    norm(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn rotation_examples() {
        let z = rotation_matrix(&[0.0], 3).unwrap();
        assert_eq!(z, Matrix::identity(3));
        let z = rotation_matrix(&[std::f64::consts::FRAC_PI_2], 3).unwrap();
        let expect = Matrix::from_rows(&[vec![0.0, -1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert!(z.sub(&expect).max_abs() < 1e-15);
        assert!(matches!(rotation_matrix::<f64>(&[], 2), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn rotation_columns_are_scaled_partials() {
        let angles = [0.3f64, -0.7, 1.1];
        let z = rotation_matrix(&angles, 5).unwrap();
        for j in 0..3 {
            let d = direction_partial(&angles, &unit_orders(3, &[j]));
            let p = trailing_cos_product(&angles, j);
            for i in 0..4 {
                assert!((z[(i, j + 1)] - d[i] / p).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cylinder_forms_n3() {
        let c = 1.7f64;
        let p = ProfileCurve::cylinder(c, (-1.0, 1.0)).unwrap();
        let ff = fundamental_forms(&p, &ChartPoint::new(0.2, vec![0.4])).unwrap();
        assert!(ff.first.sub(&Matrix::from_diagonal(&[1.0, c * c])).max_abs() < 1e-14);
        assert!(ff.second[(0, 0)].abs() < 1e-14);
        assert!((ff.second[(1, 1)].abs() - c).abs() < 1e-14);
    }

    #[test]
    fn plane_normal_is_axis() {
        let p = ProfileCurve::<f64>::plane(0.5, (0.5, 2.0)).unwrap();
        let fr = adapted_frame(&p, &ChartPoint::new(1.0, vec![0.0])).unwrap();
        assert!((fr.gauss[2].abs() - 1.0).abs() < 1e-15);
        assert!(max_abs(&fr.gauss[..2]) < 1e-15);
    }

    #[test]
    fn degenerate_chart_rejected() {
        let p = ProfileCurve::circle(1.0, 0.0, (0.1, 3.0)).unwrap();
        let bad = ChartPoint::new(1.0, vec![0.2, std::f64::consts::FRAC_PI_2]);
        assert!(matches!(adapted_frame(&p, &bad), Err(Error::DegenerateChart { index: 2, .. })));
        // theta_1 is never a coordinate singularity.
        assert!(adapted_frame(&p, &ChartPoint::new(1.0, vec![std::f64::consts::FRAC_PI_2, 0.2])).is_ok());
    }

    #[test]
    fn closed_gauss_matches_cross_product() {
        let p = ProfileCurve::circle(1.3, 0.0, (0.1, 3.0)).unwrap();
        for n in 3..=6 {
            let angles: Vec<f64> = (0..n - 2).map(|i| 0.3 * i as f64 - 0.2).collect();
            let pt = ChartPoint::new(1.1, angles.clone());
            let fr = adapted_frame(&p, &pt).unwrap();
            let g = closed_gauss(&p.jet(1.1).unwrap(), &angles);
            for (a, b) in fr.gauss.iter().zip(&g) {
                assert!((a - b).abs() < 1e-14, "n={n}");
            }
        }
    }

    #[test]
    fn corollary_two_cylinder_mean_curvature() {
        let c = 2.5;
        let p = ProfileCurve::cylinder(c, (-1.0, 1.0)).unwrap();
        for n in 3..=8 {
            let s = shape_spectrum(&p, 0.0, n).unwrap();
            let eps = f64::from(epsilon_sign(n));
            let expected = -eps * (n as f64 - 2.0) / ((n as f64 - 1.0) * c);
            assert!((s.mean - expected).abs() < 1e-14 * expected.abs());
            assert!(s.gauss.abs() < 1e-14);
        }
    }
}
