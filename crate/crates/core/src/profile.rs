//! Profile curves `γ(r) = (f(r), 0, …, 0, φ(r))` in the `x₁xₙ` plane.
//!
//! Every family exposes its value and first three derivatives through
//! [`ProfileJet`]. Closed-form families differentiate analytically;
//! turning-angle profiles store `R(r)` symbolically and recover `f`, `φ` by
//! quadrature of `cos R`, `sin R`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::AdaptiveQuadrature;
use crate::scalar::Real;

/// Tolerance for the unit-speed invariant `|f'² + φ'² − 1|`.
pub const UNIT_SPEED_TOL: f64 = 1e-12;

/// Spacing between cached quadrature anchors of turning-angle profiles.
const ANCHOR_SPACING: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileFamily {
    Line,
    Circle,
    Cylinder,
    Plane,
    Cone,
    TurningAngle,
    CatenaryLike,
}

impl ProfileFamily {
    pub const ALL: [ProfileFamily; 7] = [
        ProfileFamily::Line,
        ProfileFamily::Circle,
        ProfileFamily::Cylinder,
        ProfileFamily::Plane,
        ProfileFamily::Cone,
        ProfileFamily::TurningAngle,
        ProfileFamily::CatenaryLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProfileFamily::Line => "line",
            ProfileFamily::Circle => "circle",
            ProfileFamily::Cylinder => "cylinder",
            ProfileFamily::Plane => "plane",
            ProfileFamily::Cone => "cone",
            ProfileFamily::TurningAngle => "turning_angle",
            ProfileFamily::CatenaryLike => "catenary_like",
        }
    }
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProfileFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidProfile(format!("unknown family `{s}`")))
    }
}

/// Value and derivatives of order 0..=3 of `f` and `φ` at one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileJet<T> {
    pub f: [T; 4],
    pub phi: [T; 4],
}

impl<T: Real> ProfileJet<T> {
    /// `|γ'| = (f'² + φ'²)^{1/2}`.
    pub fn speed(&self) -> T {
        (self.f[1] * self.f[1] + self.phi[1] * self.phi[1]).sqrt()
    }

    /// Derivative of the speed, `v' = (f'f'' + φ'φ'')/v`.
    pub fn speed_derivative(&self) -> T {
        (self.f[1] * self.f[2] + self.phi[1] * self.phi[2]) / self.speed()
    }

    /// `f'φ'' − f''φ'`.
    pub fn cross(&self) -> T {
        self.f[1] * self.phi[2] - self.f[2] * self.phi[1]
    }

    /// `|f'² + φ'² − 1|`.
    pub fn unit_speed_defect(&self) -> T {
        (self.f[1] * self.f[1] + self.phi[1] * self.phi[1] - T::one()).abs()
    }

    /// Turning-angle data `(sin R, cos R, R', R'')` of a unit-speed jet.
    pub fn turning(&self) -> TurningData<T> {
        TurningData {
            sin: self.phi[1],
            cos: self.f[1],
            d1: self.f[1] * self.phi[2] - self.f[2] * self.phi[1],
            d2: self.f[1] * self.phi[3] - self.f[3] * self.phi[1],
        }
    }
}

/// `sin R`, `cos R`, `R'`, `R''` at a point of a unit-speed profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningData<T> {
    pub sin: T,
    pub cos: T,
    pub d1: T,
    pub d2: T,
}

/// Turning angle `R(r)` stored symbolically.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleFunction<T> {
    /// `R(r) = Σ cᵢ rⁱ`.
    Polynomial(Vec<T>),
    /// `R(r) = a₀ + Σₖ aₖ cos(kωr) + bₖ sin(kωr)`, `k ≥ 1`.
    Fourier { omega: T, constant: T, cos: Vec<T>, sin: Vec<T> },
}

impl<T: Real> AngleFunction<T> {
    /// `(R, R', R'')` at `r`.
    pub fn eval(&self, r: T) -> [T; 3] {
        match self {
            AngleFunction::Polynomial(c) => {
                let mut out = [T::zero(); 3];
                for &ci in c.iter().rev() {
                    out[2] = out[2] * r + out[1] * T::lit(2.0);
                    out[1] = out[1] * r + out[0];
                    out[0] = out[0] * r + ci;
                }
                out
            }
            AngleFunction::Fourier { omega, constant, cos, sin } => {
                let mut out = [*constant, T::zero(), T::zero()];
                let len = cos.len().max(sin.len());
                for k in 1..=len {
                    let w = *omega * T::from_count(k);
                    let a = cos.get(k - 1).copied().unwrap_or_else(T::zero);
                    let b = sin.get(k - 1).copied().unwrap_or_else(T::zero);
                    let (s, c) = (w * r).sin_cos();
                    out[0] = out[0] + a * c + b * s;
                    out[1] = out[1] + w * (b * c - a * s);
                    out[2] = out[2] - w * w * (a * c + b * s);
                }
                out
            }
        }
    }

    fn cast<U: Real>(&self) -> AngleFunction<U> {
        let c = |v: &[T]| v.iter().map(|x| U::lit(x.as_f64())).collect();
        match self {
            AngleFunction::Polynomial(p) => AngleFunction::Polynomial(c(p)),
            AngleFunction::Fourier { omega, constant, cos, sin } => AngleFunction::Fourier {
                omega: U::lit(omega.as_f64()),
                constant: U::lit(constant.as_f64()),
                cos: c(cos),
                sin: c(sin),
            },
        }
    }
}

/// Turning-angle profile with cached cumulative integrals.
#[derive(Clone, Debug)]
pub struct TurningAngleProfile<T> {
    angle: AngleFunction<T>,
    r0: T,
    f0: T,
    phi0: T,
    /// `(r, f(r), φ(r))` at anchors spaced at most `ANCHOR_SPACING` apart.
    anchors: Vec<(T, T, T)>,
    quad: AdaptiveQuadrature<T>,
}

impl<T: Real> TurningAngleProfile<T> {
    fn new(angle: AngleFunction<T>, r0: T, f0: T, phi0: T, domain: (T, T)) -> Self {
        let quad = AdaptiveQuadrature::new();
        let lo = domain.0.min(r0);
        let hi = domain.1.max(r0);
        let spacing = T::lit(ANCHOR_SPACING);
        let mut anchors = vec![(r0, f0, phi0)];
        let push = |dir: T, limit: T, anchors: &mut Vec<(T, T, T)>| {
            let (mut r, mut f, mut p) = (r0, f0, phi0);
            while (limit - r) * dir > T::zero() {
                let next = if (limit - r).abs() <= spacing { limit } else { r + dir * spacing };
                f = f + quad.integrate(&|s| angle.eval(s)[0].cos(), r, next);
                p = p + quad.integrate(&|s| angle.eval(s)[0].sin(), r, next);
                r = next;
                anchors.push((r, f, p));
            }
        };
        push(T::one(), hi, &mut anchors);
        push(-T::one(), lo, &mut anchors);
        anchors.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        Self { angle, r0, f0, phi0, anchors, quad }
    }

    fn value(&self, r: T) -> (T, T) {
        let idx = match self
            .anchors
            .binary_search_by(|a| a.0.partial_cmp(&r).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => return (self.anchors[i].1, self.anchors[i].2),
            Err(i) => i,
        };
        let candidates = [idx.saturating_sub(1), idx.min(self.anchors.len() - 1)];
        let nearest = candidates
            .into_iter()
            .min_by(|&a, &b| {
                (self.anchors[a].0 - r)
                    .abs()
                    .partial_cmp(&(self.anchors[b].0 - r).abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(0);
        let (ra, fa, pa) = self.anchors[nearest];
        let f = fa + self.quad.integrate(&|s| self.angle.eval(s)[0].cos(), ra, r);
        let p = pa + self.quad.integrate(&|s| self.angle.eval(s)[0].sin(), ra, r);
        (f, p)
    }

    pub fn angle(&self) -> &AngleFunction<T> {
        &self.angle
    }
}

/// The family-specific definition of a profile.
#[derive(Clone, Debug)]
pub enum ProfileKind<T> {
    /// `f = f₀ + f'·r`, `φ = φ₀ + φ'·r`; unit speed only when `f'² + φ'² = 1`.
    Line { f0: T, phi0: T, df: T, dphi: T },
    /// `f = ρ sin(r/ρ)`, `φ = h − ρ cos(r/ρ)`.
    Circle { radius: T, height: T },
    /// `f ≡ c`, `φ = r`.
    Cylinder { radius: T },
    /// `f = r`, `φ ≡ h`.
    Plane { height: T },
    /// `f = f₀ + r cos α`, `φ = r sin α`.
    Cone { angle: T, f0: T },
    /// `f' = cos R`, `φ' = sin R`, anchored at `f(r₀) = f₀`, `φ(r₀) = φ₀`.
    TurningAngle(Box<TurningAngleProfile<T>>),
    /// `f = (a² + r²)^{1/2}`, `φ = a·asinh(r/a)`: the unit-speed catenary.
    CatenaryLike { neck: T },
}

/// A regular plane profile curve on an open interval.
#[derive(Clone, Debug)]
pub struct ProfileCurve<T> {
    kind: ProfileKind<T>,
    domain: (T, T),
    /// Evaluation at `r` uses the defining formulas at `r − shift`.
    shift: T,
}

impl<T: Real> ProfileCurve<T> {
    pub fn line(f0: T, phi0: T, df: T, dphi: T, domain: (T, T)) -> Result<Self> {
        if df == T::zero() && dphi == T::zero() {
            return Err(Error::InvalidProfile("line direction is zero".into()));
        }
        Self::build(ProfileKind::Line { f0, phi0, df, dphi }, domain)
    }

    pub fn circle(radius: T, height: T, domain: (T, T)) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::NonPositiveRadius(radius.as_f64()));
        }
        Self::build(ProfileKind::Circle { radius, height }, domain)
    }

    pub fn cylinder(radius: T, domain: (T, T)) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::NonPositiveRadius(radius.as_f64()));
        }
        Self::build(ProfileKind::Cylinder { radius }, domain)
    }

    pub fn plane(height: T, domain: (T, T)) -> Result<Self> {
        Self::build(ProfileKind::Plane { height }, domain)
    }

    pub fn cone(angle: T, f0: T, domain: (T, T)) -> Result<Self> {
        Self::build(ProfileKind::Cone { angle, f0 }, domain)
    }

    pub fn turning_angle(angle: AngleFunction<T>, r0: T, f0: T, phi0: T, domain: (T, T)) -> Result<Self> {
        check_domain(domain)?;
        let inner = TurningAngleProfile::new(angle, r0, f0, phi0, domain);
        Self::build(ProfileKind::TurningAngle(Box::new(inner)), domain)
    }

    pub fn catenary_like(neck: T, domain: (T, T)) -> Result<Self> {
        if !(neck > T::zero()) {
            return Err(Error::NonPositiveRadius(neck.as_f64()));
        }
        Self::build(ProfileKind::CatenaryLike { neck }, domain)
    }

    fn build(kind: ProfileKind<T>, domain: (T, T)) -> Result<Self> {
        check_domain(domain)?;
        let curve = Self { kind, domain, shift: T::zero() };
        let samples = 64;
        for i in 0..samples {
            let t = T::lit((i as f64 + 0.5) / samples as f64);
            let r = domain.0 + (domain.1 - domain.0) * t;
            let (f, _) = curve.value_unchecked(r);
            if !(f > T::zero()) || !f.is_finite() {
                return Err(Error::InvalidProfile(format!(
                    "f must be positive on the domain, f({}) = {}",
                    r.as_f64(),
                    f.as_f64()
                )));
            }
        }
        Ok(curve)
    }

    /// Builds a profile from a named-parameter map (the wire format).
    pub fn from_params(family: ProfileFamily, params: &BTreeMap<String, f64>, domain: (f64, f64)) -> Result<Self> {
        let get = |name: &str| -> Result<T> {
            params
                .get(name)
                .map(|&v| T::lit(v))
                .ok_or_else(|| Error::InvalidProfile(format!("missing parameter `params.{name}`")))
        };
        let opt = |name: &str, default: f64| T::lit(params.get(name).copied().unwrap_or(default));
        let allowed: &[&str] = match family {
            ProfileFamily::Line => &["f0", "phi0", "df", "dphi"],
            ProfileFamily::Circle => &["radius", "height"],
            ProfileFamily::Cylinder => &["radius"],
            ProfileFamily::Plane => &["height"],
            ProfileFamily::Cone => &["angle", "f0"],
            ProfileFamily::TurningAngle => &[],
            ProfileFamily::CatenaryLike => &["neck"],
        };
        if family != ProfileFamily::TurningAngle {
            if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(Error::InvalidProfile(format!("unknown parameter `params.{bad}` for {family}")));
            }
        }
        let d = (T::lit(domain.0), T::lit(domain.1));
        match family {
            ProfileFamily::Line => Self::line(get("f0")?, opt("phi0", 0.0), get("df")?, get("dphi")?, d),
            ProfileFamily::Circle => Self::circle(get("radius")?, opt("height", 0.0), d),
            ProfileFamily::Cylinder => Self::cylinder(get("radius")?, d),
            ProfileFamily::Plane => Self::plane(opt("height", 0.0), d),
            ProfileFamily::Cone => Self::cone(get("angle")?, get("f0")?, d),
            ProfileFamily::CatenaryLike => Self::catenary_like(get("neck")?, d),
            ProfileFamily::TurningAngle => {
                let angle = angle_from_params(params)?;
                Self::turning_angle(angle, opt("r0", 0.0), get("f0")?, opt("phi0", 0.0), d)
            }
        }
    }

    /// Named parameters reproducing this profile through [`Self::from_params`]
    /// (the translation offset is not included).
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: T| {
            m.insert(k.to_string(), v.as_f64());
        };
        match &self.kind {
            ProfileKind::Line { f0, phi0, df, dphi } => {
                put("f0", *f0);
                put("phi0", *phi0);
                put("df", *df);
                put("dphi", *dphi);
            }
            ProfileKind::Circle { radius, height } => {
                put("radius", *radius);
                put("height", *height);
            }
            ProfileKind::Cylinder { radius } => put("radius", *radius),
            ProfileKind::Plane { height } => put("height", *height),
            ProfileKind::Cone { angle, f0 } => {
                put("angle", *angle);
                put("f0", *f0);
            }
            ProfileKind::CatenaryLike { neck } => put("neck", *neck),
            ProfileKind::TurningAngle(t) => {
                put("r0", t.r0);
                put("f0", t.f0);
                put("phi0", t.phi0);
                match &t.angle {
                    AngleFunction::Polynomial(c) => {
                        for (i, &ci) in c.iter().enumerate() {
                            put(&format!("c{i}"), ci);
                        }
                    }
                    AngleFunction::Fourier { omega, constant, cos, sin } => {
                        put("omega", *omega);
                        put("a0", *constant);
                        for (i, &a) in cos.iter().enumerate() {
                            put(&format!("a{}", i + 1), a);
                        }
                        for (i, &b) in sin.iter().enumerate() {
                            put(&format!("b{}", i + 1), b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn family(&self) -> ProfileFamily {
        match self.kind {
            ProfileKind::Line { .. } => ProfileFamily::Line,
            ProfileKind::Circle { .. } => ProfileFamily::Circle,
            ProfileKind::Cylinder { .. } => ProfileFamily::Cylinder,
            ProfileKind::Plane { .. } => ProfileFamily::Plane,
            ProfileKind::Cone { .. } => ProfileFamily::Cone,
            ProfileKind::TurningAngle(_) => ProfileFamily::TurningAngle,
            ProfileKind::CatenaryLike { .. } => ProfileFamily::CatenaryLike,
        }
    }

    pub fn kind(&self) -> &ProfileKind<T> {
        &self.kind
    }

    pub fn domain(&self) -> (T, T) {
        self.domain
    }

    pub fn shift(&self) -> T {
        self.shift
    }

    pub fn contains(&self, r: T) -> bool {
        r > self.domain.0 && r < self.domain.1
    }

    /// Same curve reparametrized by `r ↦ r + c`.
    pub fn translated(&self, c: T) -> Self {
        Self {
            kind: self.kind.clone(),
            domain: (self.domain.0 + c, self.domain.1 + c),
            shift: self.shift + c,
        }
    }

    /// Whether the parametrization is unit speed by construction.
    pub fn is_unit_speed(&self) -> bool {
        match self.kind {
            ProfileKind::Line { df, dphi, .. } => {
                (df * df + dphi * dphi - T::one()).abs().as_f64() < UNIT_SPEED_TOL
            }
            _ => true,
        }
    }

    /// `n` equally spaced interior points, `margin` (as a fraction of the
    /// domain length) away from both ends.
    pub fn sample_points(&self, count: usize, margin: f64) -> Vec<T> {
        let (lo, hi) = self.domain;
        let len = hi - lo;
        let a = lo + len * T::lit(margin);
        let b = hi - len * T::lit(margin);
        (0..count)
            .map(|i| {
                if count == 1 {
                    (a + b) * T::lit(0.5)
                } else {
                    a + (b - a) * T::from_count(i) / T::from_count(count - 1)
                }
            })
            .collect()
    }

    fn check(&self, r: T) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { r: r.as_f64(), min: self.domain.0.as_f64(), max: self.domain.1.as_f64() })
        }
    }

    /// `(f(r), φ(r))`.
    pub fn value(&self, r: T) -> Result<(T, T)> {
        self.check(r)?;
        Ok(self.value_unchecked(r))
    }

    fn value_unchecked(&self, r: T) -> (T, T) {
        let s = r - self.shift;
        match &self.kind {
            ProfileKind::Line { f0, phi0, df, dphi } => (*f0 + *df * s, *phi0 + *dphi * s),
            ProfileKind::Circle { radius, height } => {
                let (sn, cs) = (s / *radius).sin_cos();
                (*radius * sn, *height - *radius * cs)
            }
            ProfileKind::Cylinder { radius } => (*radius, s),
            ProfileKind::Plane { height } => (s, *height),
            ProfileKind::Cone { angle, f0 } => {
                let (sn, cs) = angle.sin_cos();
                (*f0 + s * cs, s * sn)
            }
            ProfileKind::TurningAngle(t) => t.value(s),
            ProfileKind::CatenaryLike { neck } => {
                let f = (*neck * *neck + s * s).sqrt();
                (f, *neck * (s / *neck).asinh())
            }
        }
    }

    /// Value and derivatives up to order three.
    pub fn jet(&self, r: T) -> Result<ProfileJet<T>> {
        self.check(r)?;
        let s = r - self.shift;
        let z = T::zero();
        let one = T::one();
        let jet = match &self.kind {
            ProfileKind::Line { f0, phi0, df, dphi } => {
                ProfileJet { f: [*f0 + *df * s, *df, z, z], phi: [*phi0 + *dphi * s, *dphi, z, z] }
            }
            ProfileKind::Circle { radius, height } => {
                let rho = *radius;
                let (sn, cs) = (s / rho).sin_cos();
                ProfileJet {
                    f: [rho * sn, cs, -sn / rho, -cs / (rho * rho)],
                    phi: [*height - rho * cs, sn, cs / rho, -sn / (rho * rho)],
                }
            }
            ProfileKind::Cylinder { radius } => ProfileJet { f: [*radius, z, z, z], phi: [s, one, z, z] },
            ProfileKind::Plane { height } => ProfileJet { f: [s, one, z, z], phi: [*height, z, z, z] },
            ProfileKind::Cone { angle, f0 } => {
                let (sn, cs) = angle.sin_cos();
                ProfileJet { f: [*f0 + s * cs, cs, z, z], phi: [s * sn, sn, z, z] }
            }
            ProfileKind::TurningAngle(t) => {
                let (f, p) = t.value(s);
                let [angle, d1, d2] = t.angle.eval(s);
                let (sn, cs) = angle.sin_cos();
                ProfileJet {
                    f: [f, cs, -sn * d1, -cs * d1 * d1 - sn * d2],
                    phi: [p, sn, cs * d1, -sn * d1 * d1 + cs * d2],
                }
            }
            ProfileKind::CatenaryLike { neck } => {
                let a = *neck;
                let a2 = a * a;
                let f = (a2 + s * s).sqrt();
                let f3 = f * f * f;
                let f5 = f3 * f * f;
                ProfileJet {
                    f: [f, s / f, a2 / f3, -T::lit(3.0) * a2 * s / f5],
                    phi: [a * (s / a).asinh(), a / f, -a * s / f3, a * (T::lit(2.0) * s * s - a2) / f5],
                }
            }
        };
        Ok(jet)
    }

    /// Jet of a profile that must be unit speed at `r`.
    pub fn unit_jet(&self, r: T) -> Result<ProfileJet<T>> {
        let jet = self.jet(r)?;
        let defect = jet.unit_speed_defect();
        if defect.as_f64() > UNIT_SPEED_TOL {
            return Err(Error::NotUnitSpeed { r: r.as_f64(), defect: defect.as_f64() });
        }
        Ok(jet)
    }

    /// The same profile evaluated in another scalar type.
    pub fn cast<U: Real>(&self) -> ProfileCurve<U> {
        let c = |x: T| U::lit(x.as_f64());
        let kind = match &self.kind {
            ProfileKind::Line { f0, phi0, df, dphi } => {
                ProfileKind::Line { f0: c(*f0), phi0: c(*phi0), df: c(*df), dphi: c(*dphi) }
            }
            ProfileKind::Circle { radius, height } => ProfileKind::Circle { radius: c(*radius), height: c(*height) },
            ProfileKind::Cylinder { radius } => ProfileKind::Cylinder { radius: c(*radius) },
            ProfileKind::Plane { height } => ProfileKind::Plane { height: c(*height) },
            ProfileKind::Cone { angle, f0 } => ProfileKind::Cone { angle: c(*angle), f0: c(*f0) },
            ProfileKind::CatenaryLike { neck } => ProfileKind::CatenaryLike { neck: c(*neck) },
            ProfileKind::TurningAngle(t) => {
                let base = (c(self.domain.0 - self.shift), c(self.domain.1 - self.shift));
                ProfileKind::TurningAngle(Box::new(TurningAngleProfile::new(
                    t.angle.cast(),
                    c(t.r0),
                    c(t.f0),
                    c(t.phi0),
                    base,
                )))
            }
        };
        ProfileCurve { kind, domain: (c(self.domain.0), c(self.domain.1)), shift: c(self.shift) }
    }
}

fn check_domain<T: Real>(domain: (T, T)) -> Result<()> {
    if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
        return Err(Error::InvalidProfile(format!(
            "domain ({}, {}) must be a finite nonempty interval",
            domain.0.as_f64(),
            domain.1.as_f64()
        )));
    }
    Ok(())
}

fn angle_from_params<T: Real>(params: &BTreeMap<String, f64>) -> Result<AngleFunction<T>> {
    let indexed = |prefix: char| -> Result<Vec<(usize, f64)>> {
        let mut out = Vec::new();
        for (k, &v) in params {
            if let Some(rest) = k.strip_prefix(prefix) {
                let idx = rest
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidProfile(format!("unknown parameter `params.{k}`")))?;
                out.push((idx, v));
            }
        }
        Ok(out)
    };
    for k in params.keys() {
        let ok = matches!(k.as_str(), "r0" | "f0" | "phi0" | "omega")
            || k.strip_prefix(['c', 'a', 'b']).is_some_and(|rest| rest.parse::<usize>().is_ok());
        if !ok {
            return Err(Error::InvalidProfile(format!("unknown parameter `params.{k}` for turning_angle")));
        }
    }
    let dense = |pairs: Vec<(usize, f64)>, start: usize| -> Vec<T> {
        let len = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(start).saturating_sub(start);
        let mut v = vec![T::zero(); len];
        for (i, x) in pairs {
            if i >= start {
                v[i - start] = T::lit(x);
            }
        }
        v
    };
    if let Some(&omega) = params.get("omega") {
        if params.keys().any(|k| k.starts_with('c')) {
            return Err(Error::InvalidProfile("turning_angle mixes polynomial and Fourier parameters".into()));
        }
        let a = indexed('a')?;
        let constant = a.iter().find(|p| p.0 == 0).map_or(0.0, |p| p.1);
        Ok(AngleFunction::Fourier {
            omega: T::lit(omega),
            constant: T::lit(constant),
            cos: dense(a, 1),
            sin: dense(indexed('b')?, 1),
        })
    } else {
        let c = indexed('c')?;
        if c.is_empty() {
            return Err(Error::InvalidProfile("turning_angle needs `params.c0`.. or `params.omega`".into()));
        }
        if params.keys().any(|k| k.starts_with('a') || k.starts_with('b')) {
            return Err(Error::InvalidProfile("Fourier coefficients require `params.omega`".into()));
        }
        Ok(AngleFunction::Polynomial(dense(c, 0)))
    }
}

/// Serialized profile description consumed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpecDocument {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub domain: [f64; 2],
    pub n: usize,
    pub unit_speed: bool,
}

impl ProfileSpecDocument {
    pub fn from_profile(profile: &ProfileCurve<f64>, n: usize) -> Self {
        Self {
            family: profile.family().name().to_string(),
            params: profile.params(),
            domain: [profile.domain().0, profile.domain().1],
            n,
            unit_speed: profile.is_unit_speed(),
        }
    }

    /// Validates the document and builds the profile. A document claiming
    /// unit speed for a curve that is not is rejected.
    pub fn to_profile(&self) -> Result<ProfileCurve<f64>> {
        if self.n < 3 {
            return Err(Error::InvalidDimension { n: self.n, min: 3 });
        }
        let family: ProfileFamily = self.family.parse()?;
        let profile = ProfileCurve::from_params(family, &self.params, (self.domain[0], self.domain[1]))?;
        if self.unit_speed && !profile.is_unit_speed() {
            return Err(Error::InvalidProfile("`unit_speed` is true but the curve is not unit speed".into()));
        }
        Ok(profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(p: &ProfileCurve<f64>, r: f64) {
        let h = 1e-4;
        let j = p.jet(r).unwrap();
        let jp = p.jet(r + h).unwrap();
        let jm = p.jet(r - h).unwrap();
        for order in 0..3 {
            let df = (jp.f[order] - jm.f[order]) / (2.0 * h);
            let dp = (jp.phi[order] - jm.phi[order]) / (2.0 * h);
            assert!((df - j.f[order + 1]).abs() < 1e-6, "{:?} f order {}", p.family(), order + 1);
            assert!((dp - j.phi[order + 1]).abs() < 1e-6, "{:?} phi order {}", p.family(), order + 1);
        }
    }

    #[test]
    fn jets_are_consistent_with_values() {
        let profiles = vec![
            ProfileCurve::line(1.0, 0.5, 0.6, 0.8, (0.0, 2.0)).unwrap(),
            ProfileCurve::circle(1.3, 0.2, (0.2, 3.0)).unwrap(),
            ProfileCurve::cylinder(2.0, (-1.0, 1.0)).unwrap(),
            ProfileCurve::plane(0.3, (0.5, 2.0)).unwrap(),
            ProfileCurve::cone(0.4, 0.5, (0.0, 2.0)).unwrap(),
            ProfileCurve::catenary_like(0.8, (-1.0, 1.5)).unwrap(),
            ProfileCurve::turning_angle(AngleFunction::Polynomial(vec![0.3, 0.4, -0.2]), 0.0, 1.0, 0.0, (-0.5, 1.5))
                .unwrap(),
            ProfileCurve::turning_angle(
                AngleFunction::Fourier { omega: 2.0, constant: 0.5, cos: vec![0.1], sin: vec![0.2, -0.05] },
                0.0,
                1.5,
                0.0,
                (-0.5, 1.5),
            )
            .unwrap(),
        ];
        for p in &profiles {
            for r in p.sample_points(7, 0.1) {
                fd_check(p, r);
                if p.is_unit_speed() {
                    assert!(p.jet(r).unwrap().unit_speed_defect() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn turning_angle_quadrature_matches_closed_form() {
        // R = r / 2 is a circle of radius 2: f = f0 + 2 sin(r/2).
        let p = ProfileCurve::<f64>::turning_angle(AngleFunction::Polynomial(vec![0.0, 0.5]), 0.0, 1.0, 0.0, (-1.0, 3.0))
            .unwrap();
        for r in p.sample_points(11, 0.01) {
            let (f, phi) = p.value(r).unwrap();
            assert!((f - (1.0 + 2.0 * (r / 2.0).sin())).abs() < 1e-13);
            assert!((phi - 2.0 * (1.0 - (r / 2.0).cos())).abs() < 1e-13);
        }
    }

    #[test]
    fn translation_shifts_domain_only() {
        let p = ProfileCurve::circle(1.0, 0.0, (0.1, 3.0)).unwrap();
        let q = p.translated(5.0);
        assert_eq!(q.jet(6.0).unwrap(), p.jet(1.0).unwrap());
        assert!(q.value(1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_radius_function() {
        assert!(ProfileCurve::plane(0.0, (-1.0, 1.0)).is_err());
        assert!(ProfileCurve::circle(1.0, 0.0, (0.1, 4.0)).is_err());
        assert!(ProfileCurve::<f64>::circle(-1.0, 0.0, (0.1, 1.0)).is_err());
    }

    #[test]
    fn spec_document_round_trip() {
        let p = ProfileCurve::turning_angle(AngleFunction::Polynomial(vec![0.3, 0.4]), 0.0, 1.0, 0.0, (0.0, 1.0))
            .unwrap();
        let doc = ProfileSpecDocument::from_profile(&p, 4);
        let back = doc.to_profile().unwrap();
        assert_eq!(ProfileSpecDocument::from_profile(&back, 4), doc);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: ProfileSpecDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        let bad = json.replace("\"n\"", "\"extra\":1,\"n\"");
        assert!(serde_json::from_str::<ProfileSpecDocument>(&bad).is_err());
    }

    #[test]
    fn unit_speed_claims_are_checked() {
        let mut doc = ProfileSpecDocument {
            family: "line".into(),
            params: [("f0", 1.0), ("df", 1.0), ("dphi", 1.0)].iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            domain: [0.0, 1.0],
            n: 3,
            unit_speed: true,
        };
        assert!(doc.to_profile().is_err());
        doc.unit_speed = false;
        assert!(doc.to_profile().is_ok());
        doc.params.insert("bogus".into(), 1.0);
        assert!(doc.to_profile().is_err());
    }
}
