//! Elementary symmetric functions of the principal curvatures and the Newton
//! transformations built from them.

use serde::Serialize;

use crate::conventions::{self, measure_sign, ConventionFlag, SignMeasurement};
use crate::error::{Error, Result};
use crate::geometry::{adapted_frame, shape_spectrum, ChartPoint, CurvatureSpectrum};
use crate::profile::{ProfileCurve, ProfileJet};
use crate::scalar::{binomial, epsilon, DoubleDouble, Real};

/// Relative tolerance for sign flags between closed forms and `σ_m`.
pub const FLAG_TOL: f64 = 1e-10;

/// Below this `|sin R|` the `n = 3` gradient formula is treated as singular.
pub const SIN_SINGULAR_TOL: f64 = 1e-12;

/// All `σ_0 … σ_len` by expanding `∏(1 + kᵢ t)`.
pub fn elementary_symmetric_all<T: Real>(values: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); values.len() + 1];
    e[0] = T::one();
    for (count, &x) in values.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            e[j] = e[j] + x * e[j - 1];
        }
    }
    e
}

/// `σ_j(values)`; zero for `j > |values|`.
pub fn elementary_symmetric<T: Real>(j: usize, values: &[T]) -> T {
    if j > values.len() {
        return T::zero();
    }
    elementary_symmetric_all(values)[j]
}

/// `σ_j` by summing over all `j`-subsets. Exponential; kept as an oracle.
pub fn elementary_symmetric_by_subsets<T: Real>(j: usize, values: &[T]) -> T {
    let len = values.len();
    assert!(len <= 24, "subset enumeration is limited to 24 values");
    if j > len {
        return T::zero();
    }
    let mut total = T::zero();
    for mask in 0u32..(1u32 << len) {
        if mask.count_ones() as usize == j {
            let mut prod = T::one();
            for (i, &v) in values.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod = prod * v;
                }
            }
            total = total + prod;
        }
    }
    total
}

/// `r_i^j = σ_j` of `values` with entry `i` removed.
pub fn reduced_symmetric<T: Real>(i: usize, j: usize, values: &[T]) -> Result<T> {
    if i >= values.len() {
        return Err(Error::IndexOutOfRange { index: i, len: values.len() });
    }
    let rest: Vec<T> = values.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &v)| v).collect();
    Ok(elementary_symmetric(j, &rest))
}

/// `s₁ … s_{n−1}` of one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetricFunctionSet<T> {
    pub n: usize,
    /// `s[j − 1] = s_j`.
    pub s: Vec<T>,
}

impl<T: Real> SymmetricFunctionSet<T> {
    /// σ of an explicit curvature multiset of size `n − 1`.
    pub fn from_values(values: &[T]) -> Self {
        let e = elementary_symmetric_all(values);
        Self { n: values.len() + 1, s: e[1..].to_vec() }
    }

    pub fn from_spectrum(spectrum: &CurvatureSpectrum<T>) -> Self {
        Self::from_values(&spectrum.eigenvalues)
    }

    /// `s_j` with `s₀ = 1` and `s_j = 0` beyond `n − 1`.
    pub fn get(&self, j: usize) -> T {
        match j {
            0 => T::one(),
            j if j <= self.s.len() => self.s[j - 1],
            _ => T::zero(),
        }
    }

    /// `s₁ / (n − 1)`.
    pub fn mean_curvature(&self) -> T {
        self.get(1) / T::from_count(self.n - 1)
    }

    /// `s_{n−1}`.
    pub fn gauss_kronecker(&self) -> T {
        self.get(self.n - 1)
    }
}

/// Eigenvalues of `P_k` in the principal frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonTransform<T> {
    pub k: usize,
    pub diag: Vec<T>,
}

impl<T: Real> NewtonTransform<T> {
    pub fn trace(&self) -> T {
        self.diag.iter().fold(T::zero(), |a, &b| a + b)
    }

    /// `max |P_k − (s_k Id − S P_{k−1})|` over the diagonal.
    pub fn recursion_defect(&self, previous: &Self, values: &[T]) -> T {
        let sk = elementary_symmetric(self.k, values);
        self.diag
            .iter()
            .zip(&previous.diag)
            .zip(values)
            .fold(T::zero(), |m, ((&d, &p), &kappa)| m.max((d - (sk - kappa * p)).abs()))
    }

    /// `max |diag_i − r_i^k|`.
    pub fn reduced_defect(&self, values: &[T]) -> T {
        (0..values.len()).fold(T::zero(), |m, i| {
            let r = reduced_symmetric(i, self.k, values).unwrap_or_else(|_| T::nan());
            m.max((self.diag[i] - r).abs())
        })
    }
}

/// `P_k = Σᵢ (−1)ⁱ s_{k−i} Sⁱ` for an explicit curvature list.
///
/// The alternating sum cancels heavily, so types coarser than double-double
/// are evaluated in double-double and rounded once.
pub fn newton_transform_values<T: Real>(k: usize, values: &[T]) -> Result<NewtonTransform<T>> {
    let max = values.len().saturating_sub(1);
    if k > max {
        return Err(Error::InvalidOrder { order: k, max });
    }
    let diag = if T::unit_roundoff().as_f64() > WIDE_ROUNDOFF {
        let wide: Vec<DoubleDouble> = values.iter().map(|v| DoubleDouble::from(v.as_f64())).collect();
        alternating_newton(k, &wide).into_iter().map(|d| T::lit(d.as_f64())).collect()
    } else {
        alternating_newton(k, values)
    };
    Ok(NewtonTransform { k, diag })
}

/// Types with a larger unit roundoff use the double-double path.
const WIDE_ROUNDOFF: f64 = 1e-20;

fn alternating_newton<T: Real>(k: usize, values: &[T]) -> Vec<T> {
    let e = elementary_symmetric_all(values);
    values
        .iter()
        .map(|&kappa| {
            let mut acc = T::zero();
            let mut power = T::one();
            for i in 0..=k {
                let term = e[k - i] * power;
                acc = if i % 2 == 0 { acc + term } else { acc - term };
                power = power * kappa;
            }
            acc
        })
        .collect()
}

/// `P_k` of a curvature spectrum, `0 ≤ k ≤ n − 2`.
pub fn newton_transform<T: Real>(k: usize, spectrum: &CurvatureSpectrum<T>) -> Result<NewtonTransform<T>> {
    newton_transform_values(k, &spectrum.eigenvalues)
}

/// `σ_m(k₁, kⱼ, …, kⱼ)` from the unit-speed closed curvatures
/// `k₁ = −εR'`, `kⱼ = −ε sin R / f`.
pub fn closed_symmetric<T: Real>(m: usize, jet: &ProfileJet<T>, n: usize) -> T {
    let t = jet.turning();
    let eps = epsilon::<T>(n);
    let a = -eps * t.d1;
    let b = -eps * t.sin / jet.f[0];
    let first = if m >= 1 { binomial::<T>(n - 2, m - 1) * a * b.powi(m as i32 - 1) } else { T::zero() };
    first + binomial::<T>(n - 2, m) * b.powi(m as i32)
}

/// `dσ_m/dr` along a unit-speed profile, from the closed curvatures.
pub fn closed_symmetric_derivative<T: Real>(m: usize, jet: &ProfileJet<T>, n: usize) -> T {
    if m == 0 {
        return T::zero();
    }
    let t = jet.turning();
    let f = jet.f[0];
    let eps = epsilon::<T>(n);
    let a = -eps * t.d1;
    let da = -eps * t.d2;
    let b = -eps * t.sin / f;
    let db = -eps * t.cos * (t.d1 * f - t.sin) / (f * f);
    let mi = m as i32;
    let mut out = binomial::<T>(n - 2, m - 1) * da * b.powi(mi - 1);
    if m >= 2 {
        out = out + binomial::<T>(n - 2, m - 1) * T::from_count(m - 1) * a * b.powi(mi - 2) * db;
    }
    out + binomial::<T>(n - 2, m) * T::from_count(m) * b.powi(mi - 1) * db
}

/// The turning-angle closed forms next to the true `σ_m` at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TurningClosedForms<T> {
    pub n: usize,
    pub r: T,
    /// `turning_symmetric(m)` for `m = 1 … n−1`.
    pub closed: Vec<T>,
    /// σ of the principal curvatures from the shape operator.
    pub sigma: SymmetricFunctionSet<T>,
    /// `δ_m` with `δ_m·closed[m−1] = σ_m`, or the mismatch ratio.
    pub flags: Vec<SignMeasurement>,
}

impl<T: Real> TurningClosedForms<T> {
    /// True when every degree has a constant sign flag at this point.
    pub fn consistent(&self) -> bool {
        self.flags.iter().all(|f| !f.is_mismatch())
    }

    /// Largest `|closed_m − σ_m| / max(|σ_m|, |closed_m|)` after the best
    /// sign for each degree.
    pub fn worst_relative_defect(&self) -> T {
        self.closed.iter().zip(&self.sigma.s).fold(T::zero(), |w, (&c, &s)| {
            let den = c.abs().max(s.abs());
            if den == T::zero() {
                return w;
            }
            let d = (s - c).abs().min((s + c).abs()) / den;
            w.max(d)
        })
    }
}

/// Evaluates the turning-angle closed forms and measures a sign flag per
/// degree against the shape-operator `σ_m`.
pub fn turning_closed_forms<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize) -> Result<TurningClosedForms<T>> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    let jet = profile.unit_jet(r)?;
    if jet.f[0] <= T::zero() {
        return Err(Error::SingularProfile { r: r.as_f64(), reason: "f must be positive" });
    }
    let t = jet.turning();
    let closed: Vec<T> = (1..n).map(|m| conventions::turning_symmetric(m, &t, jet.f[0], n)).collect();
    let sigma = SymmetricFunctionSet::from_spectrum(&shape_spectrum(profile, r, n)?);
    let scale = sigma.s.iter().chain(&closed).fold(T::one(), |m, &v| m.max(v.abs()));
    let flags = closed.iter().zip(&sigma.s).map(|(&c, &s)| measure_sign(c, s, scale, FLAG_TOL)).collect();
    Ok(TurningClosedForms { n, r, closed, sigma, flags })
}

/// `∇s_{n−2} = s'_{n−2} e₁` at a meridian point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradientSnm2<T> {
    /// The closed gradient formula as stated.
    pub closed: T,
    /// Recorded flag relating `closed` to `dσ_{n−2}/dr`.
    pub flag: ConventionFlag,
    /// `flag · closed`.
    pub derivative: T,
    /// `e₁` on the meridian `θ = 0`.
    pub direction: Vec<T>,
}

/// Closed gradient of `s_{n−2}` along a unit-speed profile.
pub fn grad_s_nm2<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize) -> Result<GradientSnm2<T>> {
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 });
    }
    let jet = profile.unit_jet(r)?;
    if jet.f[0] <= T::zero() {
        return Err(Error::SingularProfile { r: r.as_f64(), reason: "f must be positive" });
    }
    let t = jet.turning();
    if n == 3 && t.sin.abs() < T::lit(SIN_SINGULAR_TOL) {
        return Err(Error::SingularFormula("sin^(n-4) R with n = 3 at sin R = 0"));
    }
    let closed = conventions::turning_grad_s_nm2(&t, jet.f[0], n);
    let flag = conventions::recorded_flag("turning_grad_s_nm2").and_then(|f| f.flag).unwrap_or(ConventionFlag::Plus);
    let frame = adapted_frame(profile, &ChartPoint::meridian(r, n))?;
    Ok(GradientSnm2 { closed, flag, derivative: flag.scalar::<T>(n) * closed, direction: frame.e[0].clone() })
}

/// `σ_m` from the shape operator at a meridian point.
pub fn sigma_at<T: Real>(profile: &ProfileCurve<T>, r: T, n: usize, m: usize) -> Result<T> {
    Ok(SymmetricFunctionSet::from_spectrum(&shape_spectrum(profile, r, n)?).get(m))
}
