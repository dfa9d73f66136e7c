//! Fitting `L_{n−3}G = AG` and classifying rotational eigen-hypersurfaces.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{adapted_frame, rotate, shape_spectrum, ChartPoint};
use crate::linalg::{axpy, dot, symmetric_eigen, Matrix};
use crate::lk::{lk_gauss_closed, lk_gauss_closed_order, lk_gauss_numeric, FdOptions};
use crate::profile::ProfileCurve;
use crate::scalar::{epsilon, epsilon_sign, Real};
use crate::symfunc::{closed_symmetric, closed_symmetric_derivative, SymmetricFunctionSet};

/// Angles are drawn from `(−ANGLE_RANGE, ANGLE_RANGE)`.
pub const ANGLE_RANGE: f64 = 1.2;
/// Fraction of the domain left out at each end when sampling.
pub const SAMPLE_MARGIN: f64 = 0.05;
/// Eigenvalues of the normal matrix below this fraction of the largest are
/// treated as zero.
pub const RANK_TOL: f64 = 1e-10;
/// Relative tolerance on the umbilic radius check `||k₁|ρ − 1|`.
pub const RADIUS_TOL: f64 = 1e-6;
/// `|det A|` above this counts as regular.
pub const REGULAR_DET_TOL: f64 = 1e-8;

/// Tolerances of the decision tree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative RMS residual of the fit.
    pub fit: f64,
    /// `max |K|` for flatness.
    pub flat: f64,
    /// `max |H|` for minimality.
    pub minimal: f64,
    /// Relative range for "constant along the profile".
    pub constancy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { fit: 1e-6, flat: 1e-8, minimal: 1e-8, constancy: 1e-7 }
    }
}

/// Least-squares `A` with its diagonal-pattern summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenMatrixCandidate<T> {
    pub a: Matrix<T>,
    /// RMS of `|L − AG|` over the samples.
    pub residual: T,
    /// `residual / max(1, RMS |L|)`.
    pub relative_residual: T,
    pub eta: T,
    pub phi_a: T,
    /// `phi_a − eta`.
    pub lambda: T,
    /// `A ≈ diag(η, …, η, φ)` to the fit tolerance.
    pub pattern_valid: bool,
    /// Unit directions along which the samples carry no information.
    pub deficient: Vec<Vec<f64>>,
}

impl<T: Real> EigenMatrixCandidate<T> {
    pub fn determinant(&self) -> T {
        self.a.determinant()
    }
}

/// A pair `(G, L_{n−3}G)` at one point.
pub type EigenSample<T> = (Vec<T>, Vec<T>);

struct NormalEquations<T> {
    gram: Matrix<T>,
    rhs: Matrix<T>,
}

fn normal_equations<T: Real>(samples: &[EigenSample<T>]) -> Result<NormalEquations<T>> {
    let n = samples.first().map(|s| s.0.len()).unwrap_or(0);
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    let needed = n * (n + 1);
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    let mut gram = Matrix::zeros(n, n);
    let mut rhs = Matrix::zeros(n, n);
    for (g, l) in samples {
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = gram[(i, j)] + g[i] * g[j];
                rhs[(i, j)] = rhs[(i, j)] + l[i] * g[j];
            }
        }
    }
    Ok(NormalEquations { gram, rhs })
}

fn solve_with<T: Real>(samples: &[EigenSample<T>], strict: bool, tol: f64) -> Result<EigenMatrixCandidate<T>> {
    let ne = normal_equations(samples)?;
    let n = ne.gram.rows();
    let eig = symmetric_eigen(&ne.gram);
    let top = eig.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let cut = top * T::lit(RANK_TOL);
    let mut deficient = Vec::new();
    let mut pinv = Matrix::zeros(n, n);
    for (j, &value) in eig.values.iter().enumerate() {
        let v = eig.vectors.column(j);
        if value <= cut {
            deficient.push(v.iter().map(|x| x.as_f64()).collect());
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                pinv[(a, b)] = pinv[(a, b)] + v[a] * v[b] / value;
            }
        }
    }
    if strict && !deficient.is_empty() {
        return Err(Error::Underdetermined { directions: deficient });
    }
    let a = ne.rhs.matmul(&pinv);
    Ok(summarize(a, samples, deficient, tol))
}

fn summarize<T: Real>(a: Matrix<T>, samples: &[EigenSample<T>], deficient: Vec<Vec<f64>>, tol: f64) -> EigenMatrixCandidate<T> {
    let n = a.rows();
    let count = T::from_count(samples.len());
    let mut sq = T::zero();
    let mut target = T::zero();
    for (g, l) in samples {
        let r = axpy(l, -T::one(), &a.mul_vec(g));
        sq = sq + dot(&r, &r);
        target = target + dot(l, l);
    }
    let residual = (sq / count).sqrt();
    let scale = (target / count).sqrt().max(T::one());
    let diag = a.diagonal();
    let eta = diag[..n - 1].iter().fold(T::zero(), |s, &v| s + v) / T::from_count(n - 1);
    let phi_a = diag[n - 1];
    let spread = diag[..n - 1].iter().fold(T::zero(), |m, &v| m.max((v - eta).abs()));
    let entry_scale = a.max_abs().max(T::one());
    let limit = T::lit(tol) * entry_scale;
    let pattern_valid = a.max_abs_off_diagonal() <= limit && spread <= limit;
    EigenMatrixCandidate {
        a,
        residual,
        relative_residual: residual / scale,
        eta,
        phi_a,
        lambda: phi_a - eta,
        pattern_valid,
        deficient,
    }
}

/// Least squares on the normal equations; rank deficiency is an error.
pub fn fit_eigen_matrix<T: Real>(samples: &[EigenSample<T>]) -> Result<EigenMatrixCandidate<T>> {
    solve_with(samples, true, Tolerances::default().fit)
}

/// Minimum-norm least squares; deficient directions are reported on the
/// candidate instead of failing.
pub fn fit_eigen_matrix_min_norm<T: Real>(samples: &[EigenSample<T>]) -> Result<EigenMatrixCandidate<T>> {
    solve_with(samples, false, Tolerances::default().fit)
}

fn check_radius(rho: f64, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::NonPositiveRadius(rho));
    }
    Ok(())
}

/// `ε ρ⁻ⁿ Iₙ`, the commonly quoted hypersphere matrix.
pub fn hypersphere_matrix<T: Real>(rho: T, n: usize) -> Result<Matrix<T>> {
    check_radius(rho.as_f64(), n)?;
    Ok(Matrix::identity(n).scale(epsilon::<T>(n) * rho.powi(-(n as i32))))
}

/// `ε (n−1)(n−2) ρ^{1−n} Iₙ`, the matrix a radius-`ρ` hypersphere actually
/// satisfies with the cross-product Gauss map.
pub fn sphere_eigen_matrix<T: Real>(rho: T, n: usize) -> Result<Matrix<T>> {
    check_radius(rho.as_f64(), n)?;
    let c = T::from_count((n - 1) * (n - 2));
    Ok(Matrix::identity(n).scale(epsilon::<T>(n) * c * rho.powi(1 - n as i32)))
}

/// Largest defects of the tangential and normal scalar equations along the
/// profile, for both the commonly stated and the rederived forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualDecomposition<T> {
    /// `max |s'_{n−2} − λ sin R cos R|` with the stated gradient formula.
    pub tangential: T,
    /// `max |Q − ε(λ sin²R + φ)|` with `Q = s₁s_{n−2} − (n−1)s_{n−1}`.
    pub normal: T,
    /// `max |dσ_{n−2}/dr − ελ sin R cos R|`.
    pub tangential_rederived: T,
    /// `max |Q − (λ sin²R − φ)|`.
    pub normal_rederived: T,
}

/// Evaluates both scalar equations at the given parameters of a unit-speed profile.
pub fn eigen_residual_decomposition<T: Real>(
    candidate: &EigenMatrixCandidate<T>,
    profile: &ProfileCurve<T>,
    n: usize,
    params: &[T],
) -> Result<ResidualDecomposition<T>> {
    let eps = epsilon::<T>(n);
    let (lambda, phi) = (candidate.lambda, candidate.phi_a);
    let mut out = ResidualDecomposition {
        tangential: T::zero(),
        normal: T::zero(),
        tangential_rederived: T::zero(),
        normal_rederived: T::zero(),
    };
    for &r in params {
        let jet = profile.unit_jet(r)?;
        let t = jet.turning();
        let (s, c) = (t.sin, t.cos);
        let q = closed_symmetric(1, &jet, n) * closed_symmetric(n - 2, &jet, n)
            - T::from_count(n - 1) * closed_symmetric(n - 1, &jet, n);
        let stated_grad = if n == 3 && s.abs() < T::lit(crate::symfunc::SIN_SINGULAR_TOL) {
            eps * closed_symmetric_derivative(n - 2, &jet, n)
        } else {
            crate::conventions::turning_grad_s_nm2(&t, jet.f[0], n)
        };
        out.tangential = out.tangential.max((stated_grad - lambda * s * c).abs());
        out.normal = out.normal.max((q - eps * (lambda * s * s + phi)).abs());
        let true_grad = closed_symmetric_derivative(n - 2, &jet, n);
        out.tangential_rederived = out.tangential_rederived.max((true_grad - eps * lambda * s * c).abs());
        out.normal_rederived = out.normal_rederived.max((q - (lambda * s * s - phi)).abs());
    }
    Ok(out)
}

/// Where the values of `L_{n−3}G` come from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SampleSource {
    /// Turning-angle closed forms rotated to each chart point.
    Closed,
    /// Finite-difference operator at each chart point.
    Numeric { options: FdOptions },
}

/// Sampling plan for [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplingPlan {
    /// Number of profile parameters (each gets one random chart point).
    pub count: usize,
    pub seed: u64,
    pub source: SampleSource,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self { count: 48, seed: 0, source: SampleSource::Closed }
    }
}

/// Minimum number of profile parameters accepted by [`classify`].
pub const MIN_SAMPLES: usize = 40;

/// Samples `(G, L_{n−3}G)` over the profile at seeded random chart points.
/// Returns the samples and how many fell back to the general-order closed
/// form because the stated gradient formula is singular there.
pub fn sample_eigen_pairs<T: Real>(
    profile: &ProfileCurve<T>,
    n: usize,
    plan: &SamplingPlan,
) -> Result<(Vec<T>, Vec<EigenSample<T>>, usize)> {
    let params = profile.sample_points(plan.count, SAMPLE_MARGIN);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples = Vec::with_capacity(params.len());
    let mut fallbacks = 0;
    for &r in &params {
        let angles: Vec<T> = (0..n - 2).map(|_| T::lit(rng.random_range(-ANGLE_RANGE..ANGLE_RANGE))).collect();
        let p = ChartPoint::new(r, angles);
        let g = adapted_frame(profile, &p)?.gauss;
        let l = match plan.source {
            SampleSource::Closed => {
                let meridian = match lk_gauss_closed(profile, r, n) {
                    Ok(v) => v,
                    Err(Error::SingularFormula(_)) => {
                        fallbacks += 1;
                        lk_gauss_closed_order(profile, r, n, n - 3)?
                    }
                    Err(e) => return Err(e),
                };
                rotate(&p.angles, &meridian.vector)?
            }
            SampleSource::Numeric { options } => lk_gauss_numeric(profile, &p, n - 3, &options)?,
        };
        samples.push((g, l));
    }
    Ok((params, samples, fallbacks))
}

/// Theorem-level cases of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationCase {
    Hyperplane,
    RightCircularHypercone,
    CircularHypercylinder,
    Hypersphere,
    NotEigen,
}

impl ClassificationCase {
    pub fn name(self) -> &'static str {
        match self {
            Self::Hyperplane => "hyperplane",
            Self::RightCircularHypercone => "right_circular_hypercone",
            Self::CircularHypercylinder => "circular_hypercylinder",
            Self::Hypersphere => "hypersphere",
            Self::NotEigen => "not_eigen",
        }
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationVerdict<T> {
    pub case: ClassificationCase,
    pub n: usize,
    pub candidate: EigenMatrixCandidate<T>,
    pub diagnostics: BTreeMap<String, f64>,
    pub tolerances: Tolerances,
    pub plan: SamplingPlan,
}

impl<T: Real> ClassificationVerdict<T> {
    /// An eigen matrix exists and `|det A| > 1e−8`.
    pub fn regular(&self) -> bool {
        self.case != ClassificationCase::NotEigen
            && self.candidate.determinant().abs().as_f64() > REGULAR_DET_TOL
    }
}

fn relative_range(values: &[f64]) -> f64 {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    (hi - lo) / scale
}

/// Samples the profile, fits `A` and walks the decision tree
/// NotEigen → Hyperplane → {Cylinder, Cone} → Hypersphere.
pub fn classify<T: Real>(
    profile: &ProfileCurve<T>,
    n: usize,
    tol: &Tolerances,
    plan: &SamplingPlan,
) -> Result<ClassificationVerdict<T>> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    if plan.count < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: plan.count });
    }
    let (params, samples, fallbacks) = sample_eigen_pairs(profile, n, plan)?;
    let candidate = solve_with(&samples, false, tol.fit)?;

    let mut gauss = Vec::new();
    let mut mean = Vec::new();
    let mut f = Vec::new();
    let mut sin_r = Vec::new();
    let mut cos_r = Vec::new();
    let mut s_nm2 = Vec::new();
    let mut inv_kj = Vec::new();
    let mut inv_k1 = Vec::new();
    for &r in &params {
        let spectrum = shape_spectrum(profile, r, n)?;
        let sigma = SymmetricFunctionSet::from_spectrum(&spectrum);
        let jet = profile.jet(r)?;
        let v = jet.speed();
        gauss.push(spectrum.gauss.as_f64());
        mean.push(spectrum.mean.as_f64());
        f.push(jet.f[0].as_f64());
        sin_r.push((jet.phi[1] / v).as_f64());
        cos_r.push((jet.f[1] / v).as_f64());
        s_nm2.push(sigma.get(n - 2).as_f64());
        inv_kj.push(1.0 / spectrum.kj.as_f64().abs());
        inv_k1.push(1.0 / spectrum.k1.as_f64().abs());
    }
    let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let det = candidate.determinant().as_f64();
    let mut d = BTreeMap::new();
    d.insert("max_abs_gauss_curvature".to_string(), max_abs(&gauss));
    d.insert("max_abs_mean_curvature".to_string(), max_abs(&mean));
    d.insert("s_nm2_relative_variation".to_string(), relative_range(&s_nm2));
    d.insert("fit_residual".to_string(), candidate.residual.as_f64());
    d.insert("fit_relative_residual".to_string(), candidate.relative_residual.as_f64());
    d.insert("det_a".to_string(), det);
    d.insert("deficient_directions".to_string(), candidate.deficient.len() as f64);
    d.insert("closed_form_fallbacks".to_string(), fallbacks as f64);
    d.insert("epsilon".to_string(), f64::from(epsilon_sign(n)));

    let verdict = |case: ClassificationCase, d: BTreeMap<String, f64>, candidate: EigenMatrixCandidate<T>| {
        Ok(ClassificationVerdict { case, n, candidate, diagnostics: d, tolerances: *tol, plan: *plan })
    };

    if candidate.relative_residual.as_f64() > tol.fit {
        return verdict(ClassificationCase::NotEigen, d, candidate);
    }
    let flat = max_abs(&gauss) < tol.flat;
    if flat && max_abs(&mean) < tol.minimal {
        return verdict(ClassificationCase::Hyperplane, d, candidate);
    }
    if flat {
        let f_range = relative_range(&f);
        let turning_range = relative_range(&sin_r).max(relative_range(&cos_r));
        d.insert("f_relative_range".to_string(), f_range);
        d.insert("turning_relative_range".to_string(), turning_range);
        if f_range < tol.constancy {
            return verdict(ClassificationCase::CircularHypercylinder, d, candidate);
        }
        let oblique = sin_r.iter().chain(&cos_r).all(|v| v.abs() > tol.constancy);
        if turning_range < tol.constancy && oblique {
            return verdict(ClassificationCase::RightCircularHypercone, d, candidate);
        }
        return Err(Error::Unclassifiable(format!(
            "flat and eigen but neither f nor R is constant (f range {f_range:e}, R range {turning_range:e})"
        )));
    }
    let mean_const = relative_range(&mean) < tol.constancy;
    let gauss_const = relative_range(&gauss) < tol.constancy;
    let rho = inv_kj.iter().sum::<f64>() / inv_kj.len() as f64;
    let c_est = f.iter().zip(&sin_r).map(|(a, s)| a / s.abs()).sum::<f64>() / f.len() as f64;
    let profile_defect = f
        .iter()
        .zip(&sin_r)
        .fold(0.0f64, |m, (a, s)| m.max((a - c_est * s.abs()).abs()))
        / c_est.abs().max(f64::MIN_POSITIVE);
    let umbilic_defect = inv_k1.iter().fold(0.0f64, |m, &x| m.max((rho / x - 1.0).abs()));
    d.insert("radius_estimate".to_string(), rho);
    d.insert("profile_sine_defect".to_string(), profile_defect);
    d.insert("umbilic_defect".to_string(), umbilic_defect);
    if rho.is_finite() && rho > 0.0 {
        let reference = hypersphere_matrix(T::lit(rho), n)?;
        let geometric = sphere_eigen_matrix(T::lit(rho), n)?;
        d.insert("reference_matrix_deviation".to_string(), candidate.a.sub(&reference).max_abs().as_f64());
        d.insert("sphere_matrix_deviation".to_string(), candidate.a.sub(&geometric).max_abs().as_f64());
    }
    if mean_const && gauss_const && profile_defect < tol.constancy && umbilic_defect <= RADIUS_TOL {
        return verdict(ClassificationCase::Hypersphere, d, candidate);
    }
    Err(Error::Unclassifiable(format!(
        "eigen fit accepted but no case matches (H const {mean_const}, K const {gauss_const}, \
         sine defect {profile_defect:e}, umbilic defect {umbilic_defect:e})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersphere_matrix_examples() {
        let m = hypersphere_matrix(1.0, 3).unwrap();
        assert_eq!(m, Matrix::identity(3).scale(-1.0));
        assert_eq!(hypersphere_matrix(1.0, 4).unwrap(), Matrix::identity(4));
        assert_eq!(hypersphere_matrix(2.0, 4).unwrap(), Matrix::identity(4).scale(1.0 / 16.0));
        assert!(matches!(hypersphere_matrix(0.0, 4), Err(Error::NonPositiveRadius(_))));
    }

    #[test]
    fn zero_target_fits_zero_matrix() {
        let p = ProfileCurve::circle(1.0, 0.0, (0.2, 2.9)).unwrap();
        let plan = SamplingPlan::default();
        let (_, samples, _) = sample_eigen_pairs(&p, 4, &plan).unwrap();
        let zeros: Vec<EigenSample<f64>> = samples.into_iter().map(|(g, _)| (g, vec![0.0; 4])).collect();
        let c = fit_eigen_matrix(&zeros).unwrap();
        assert_eq!(c.a.max_abs(), 0.0);
        assert_eq!(c.residual, 0.0);
    }

    #[test]
    fn too_few_samples() {
        let s: Vec<EigenSample<f64>> = vec![(vec![1.0, 0.0, 0.0], vec![0.0; 3]); 5];
        assert!(matches!(fit_eigen_matrix(&s), Err(Error::InsufficientSamples { needed: 12, got: 5 })));
    }

    #[test]
    fn cylinder_is_rank_deficient() {
        let p = ProfileCurve::cylinder(1.5, (-1.0, 1.0)).unwrap();
        let (_, samples, _) = sample_eigen_pairs(&p, 4, &SamplingPlan::default()).unwrap();
        match fit_eigen_matrix(&samples) {
            Err(Error::Underdetermined { directions }) => {
                assert_eq!(directions.len(), 1);
                assert!((directions[0][3].abs() - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }
}
