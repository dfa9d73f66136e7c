//! Sign conventions of the reference curvature formulas.
//!
//! The library orients every hypersurface by the generalized cross product
//! `G = e₁ × ⋯ × eₙ₋₁`, which makes the principal curvatures
//! `k₁ = −ε R'` and `kⱼ = −ε sin R / f` for a unit-speed profile. The
//! reference formulas collected here are the textbook-style closed forms as
//! they are usually stated. Each one is related to the cross-product value by
//! a constant [`ConventionFlag`], or by no constant at all, and the table in
//! [`RECORDED_FLAGS`] pins which.

use serde::Serialize;

use crate::profile::{ProfileJet, TurningData};
use crate::scalar::{binomial, epsilon, epsilon_sign, Real};

/// Constant factor `δ` with `δ·reference = truth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionFlag {
    Plus,
    Minus,
    /// `δ = ε = (−1)ⁿ`.
    Epsilon,
    /// `δ = −ε`.
    MinusEpsilon,
}

impl ConventionFlag {
    /// Value of the flag in dimension `n`.
    pub fn sign(self, n: usize) -> i32 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
            Self::Epsilon => epsilon_sign(n),
            Self::MinusEpsilon => -epsilon_sign(n),
        }
    }

    pub fn scalar<T: Real>(self, n: usize) -> T {
        T::lit(f64::from(self.sign(n)))
    }

    /// Combines the signs measured at an odd and at an even dimension.
    pub fn from_signs(odd: i32, even: i32) -> Self {
        match (odd > 0, even > 0) {
            (true, true) => Self::Plus,
            (false, false) => Self::Minus,
            (false, true) => Self::Epsilon,
            (true, false) => Self::MinusEpsilon,
        }
    }
}

/// Outcome of comparing a reference value with the true one at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SignMeasurement {
    /// `truth = sign · reference` within tolerance.
    Sign { sign: i32 },
    /// Both sides vanish; any flag is consistent.
    Vanishing,
    /// No sign relates the two; `ratio = truth / reference`.
    Mismatch { ratio: f64 },
}

impl SignMeasurement {
    pub fn sign(self) -> Option<i32> {
        match self {
            Self::Sign { sign } => Some(sign),
            _ => None,
        }
    }

    pub fn is_mismatch(self) -> bool {
        matches!(self, Self::Mismatch { .. })
    }
}

/// Values below this magnitude (relative to the comparison scale) count as zero.
pub const VANISHING_TOL: f64 = 1e-13;

/// Measures `truth / reference ∈ {±1}` to relative tolerance `tol`.
pub fn measure_sign<T: Real>(reference: T, truth: T, scale: T, tol: f64) -> SignMeasurement {
    let scale = scale.abs().max(T::min_positive_value());
    let vanish = T::lit(VANISHING_TOL) * scale;
    if reference.abs() <= vanish && truth.abs() <= vanish {
        return SignMeasurement::Vanishing;
    }
    let denom = reference.abs().max(truth.abs());
    let tol = T::lit(tol);
    if ((truth - reference).abs() / denom) <= tol {
        SignMeasurement::Sign { sign: 1 }
    } else if ((truth + reference).abs() / denom) <= tol {
        SignMeasurement::Sign { sign: -1 }
    } else {
        SignMeasurement::Mismatch { ratio: (truth / reference).as_f64() }
    }
}

/// Meridian curvature for an arbitrary-speed profile,
/// `ε (f'φ'' − f''φ') / (f'² + φ'²)^{3/2}`.
pub fn general_speed_k1<T: Real>(jet: &ProfileJet<T>, n: usize) -> T {
    let v = jet.speed();
    epsilon::<T>(n) * jet.cross() / (v * v * v)
}

/// Parallel curvature for an arbitrary-speed profile, `ε φ' / (f |γ'|)`.
pub fn general_speed_kj<T: Real>(jet: &ProfileJet<T>, n: usize) -> T {
    epsilon::<T>(n) * jet.phi[1] / (jet.f[0] * jet.speed())
}

/// Gauss–Kronecker curvature as usually stated,
/// `ε (f'φ'' − f''φ') φ'^{n−2} / (f^{n−2} |γ'|ⁿ)`.
pub fn general_speed_gauss<T: Real>(jet: &ProfileJet<T>, n: usize) -> T {
    let v = jet.speed();
    let m = (n - 2) as i32;
    epsilon::<T>(n) * jet.cross() * jet.phi[1].powi(m) / (jet.f[0].powi(m) * v.powi(n as i32))
}

/// Mean curvature as usually stated,
/// `ε [f f'φ'' + (n−2)φ'³ + ((n−2)f'² − f f'')φ'] / ((n−1) f |γ'|³)`.
pub fn general_speed_mean<T: Real>(jet: &ProfileJet<T>, n: usize) -> T {
    let [f, f1, f2, _] = jet.f;
    let [_, p1, p2, _] = jet.phi;
    let m = T::from_count(n - 2);
    let num = f * f1 * p2 + m * p1 * p1 * p1 + (m * f1 * f1 - f * f2) * p1;
    let v = jet.speed();
    epsilon::<T>(n) * num / (T::from_count(n - 1) * f * v * v * v)
}

/// Unit-speed meridian curvature as usually stated, `−ε(f''φ' − f'φ'') = εR'`.
pub fn turning_k1<T: Real>(t: &TurningData<T>, n: usize) -> T {
    epsilon::<T>(n) * t.d1
}

/// Unit-speed parallel curvature, `−ε sin R / f`.
pub fn turning_kj<T: Real>(t: &TurningData<T>, f: T, n: usize) -> T {
    -epsilon::<T>(n) * t.sin / f
}

/// Closed form of `s_m` in terms of the turning angle,
/// `ε[C(n−2, m−1) R' sin^{m−1}R / f^{m−1} − C(n−2, m) sinᵐR / fᵐ]`.
pub fn turning_symmetric<T: Real>(m: usize, t: &TurningData<T>, f: T, n: usize) -> T {
    let b = t.sin / f;
    let first = if m >= 1 { binomial::<T>(n - 2, m - 1) * t.d1 * b.powi(m as i32 - 1) } else { T::zero() };
    let second = binomial::<T>(n - 2, m) * b.powi(m as i32);
    epsilon::<T>(n) * (first - second)
}

/// Closed form of the `r`-derivative of `s_{n−2}`,
/// `ε(n−2){f²R'' sin R + (n−3)f²R'² cos R − (n−4)fR' sin R cos R − sin²R cos R} sin^{n−4}R / f^{n−1}`.
///
/// For `n = 3` the factor `sin^{−1} R` makes this singular at `sin R = 0`.
pub fn turning_grad_s_nm2<T: Real>(t: &TurningData<T>, f: T, n: usize) -> T {
    let nn = T::from_count(n);
    let (s, c) = (t.sin, t.cos);
    let brace = f * f * t.d2 * s + (nn - T::lit(3.0)) * f * f * t.d1 * t.d1 * c
        - (nn - T::lit(4.0)) * f * t.d1 * s * c
        - s * s * c;
    epsilon::<T>(n) * (nn - T::lit(2.0)) * brace * s.powi(n as i32 - 4) / f.powi(n as i32 - 1)
}

/// One row of the recorded convention table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RecordedFlag {
    pub formula: &'static str,
    /// `None` when no constant flag relates the formula to the truth.
    pub flag: Option<ConventionFlag>,
    pub note: &'static str,
}

/// Flags measured against the cross-product orientation. Tests re-measure
/// every row.
pub const RECORDED_FLAGS: &[RecordedFlag] = &[
    RecordedFlag { formula: "general_speed_k1", flag: Some(ConventionFlag::Minus), note: "" },
    RecordedFlag { formula: "general_speed_kj", flag: Some(ConventionFlag::Minus), note: "" },
    RecordedFlag {
        formula: "general_speed_mean",
        flag: Some(ConventionFlag::Minus),
        note: "",
    },
    RecordedFlag {
        formula: "general_speed_gauss",
        flag: Some(ConventionFlag::Minus),
        note: "unit-speed profiles only; the speed exponent is n where n + 1 is needed",
    },
    RecordedFlag { formula: "turning_k1", flag: Some(ConventionFlag::Minus), note: "" },
    RecordedFlag { formula: "turning_kj", flag: Some(ConventionFlag::Plus), note: "" },
    RecordedFlag {
        formula: "turning_symmetric",
        flag: None,
        note: "the two terms carry opposite signs; constant only where R' = 0 or sin R = 0",
    },
    RecordedFlag {
        formula: "turning_grad_s_nm2",
        flag: Some(ConventionFlag::Epsilon),
        note: "derivative of the true s_{n-2}, not of turning_symmetric(n-2)",
    },
];

/// Looks up a recorded flag by formula name.
pub fn recorded_flag(formula: &str) -> Option<&'static RecordedFlag> {
    RECORDED_FLAGS.iter().find(|f| f.formula == formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_values() {
        assert_eq!(ConventionFlag::Epsilon.sign(3), -1);
        assert_eq!(ConventionFlag::Epsilon.sign(4), 1);
        assert_eq!(ConventionFlag::MinusEpsilon.sign(5), 1);
        assert_eq!(ConventionFlag::from_signs(-1, 1), ConventionFlag::Epsilon);
        assert_eq!(ConventionFlag::from_signs(1, -1), ConventionFlag::MinusEpsilon);
        assert_eq!(ConventionFlag::from_signs(-1, -1), ConventionFlag::Minus);
    }

    #[test]
    fn sign_measurement() {
        assert_eq!(measure_sign(2.0, -2.0, 1.0, 1e-10), SignMeasurement::Sign { sign: -1 });
        assert_eq!(measure_sign(0.0, 1e-16, 1.0, 1e-10), SignMeasurement::Vanishing);
        assert!(measure_sign(1.0, 3.0, 1.0, 1e-10).is_mismatch());
    }

    #[test]
    fn table_is_complete() {
        for name in [
            "general_speed_k1",
            "general_speed_kj",
            "general_speed_mean",
            "general_speed_gauss",
            "turning_k1",
            "turning_kj",
            "turning_symmetric",
            "turning_grad_s_nm2",
        ] {
            assert!(recorded_flag(name).is_some(), "{name}");
        }
    }
}
