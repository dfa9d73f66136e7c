//! Double-double scalar.
//!
//! A thin wrapper over [`twofloat::TwoFloat`] that keeps its addition,
//! multiplication and square root but replaces division, reciprocal, integer
//! powers, sine/cosine and the primitive conversions. The upstream
//! versions of those lose the low word.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// About 106 bits of significand stored as an unevaluated sum of two `f64`s.
#[derive(Clone, Copy, Default)]
pub struct DoubleDouble(pub TwoFloat);

impl DoubleDouble {
    pub const fn new(x: f64) -> Self {
        Self(TwoFloat::from_f64(x))
    }

    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    /// Nearest `f64`.
    pub fn to_f64_nearest(self) -> f64 {
        self.0.hi() + self.0.lo()
    }

    fn quotient(a: TwoFloat, b: TwoFloat) -> TwoFloat {
        let bh = b.hi();
        let q1 = a.hi() / bh;
        if !q1.is_finite() || bh == 0.0 {
            return TwoFloat::from_f64(q1);
        }
        let r = a - b * q1;
        let q2 = r.hi() / bh;
        let r = r - b * q2;
        let q3 = r.hi() / bh;
        TwoFloat::new_add(q1, q2) + q3
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self(<TwoFloat as From<f64>>::from(x))
    }
}

impl From<TwoFloat> for DoubleDouble {
    fn from(x: TwoFloat) -> Self {
        Self(x)
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.0.hi(), self.0.lo())
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&self.0, f)
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self(Self::quotient(self.0, rhs.0))
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        self - (self / rhs).trunc() * rhs
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleDouble {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DoubleDouble {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl DivAssign for DoubleDouble {
    fn div_assign(&mut self, rhs: Self) {
        *self = *self / rhs;
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::new(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::new(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            // Only decimal literals are meaningful here.
            return "invalid radix".parse::<f64>().map(Self::new);
        }
        s.parse::<f64>().map(Self::new)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        let v = t.0.hi() as i128 + t.0.lo() as i128;
        i64::try_from(v).ok()
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        let v = t.0.hi() as i128 + t.0.lo() as i128;
        u64::try_from(v).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.to_f64_nearest())
    }
    fn to_f32(&self) -> Option<f32> {
        Some(self.to_f64_nearest() as f32)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self(<TwoFloat as From<_>>::from(n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self(<TwoFloat as From<_>>::from(n)))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::new(x))
    }
    fn from_f32(x: f32) -> Option<Self> {
        Some(Self::new(x.into()))
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Self::new)
    }
}

macro_rules! consts {
    ($($name:ident),*) => {
        $(fn $name() -> Self { Self(<TwoFloat as FloatConst>::$name()) })*
    };
}

impl FloatConst for DoubleDouble {
    consts!(
        E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4,
        FRAC_PI_6, FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2, TAU, LOG10_2, LOG2_10
    );
}

macro_rules! unary {
    ($($name:ident),*) => {
        $(fn $name(self) -> Self { Self(<TwoFloat as Float>::$name(self.0)) })*
    };
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self(TwoFloat::NAN)
    }
    fn infinity() -> Self {
        Self(TwoFloat::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self(TwoFloat::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::new(-0.0)
    }
    fn min_value() -> Self {
        Self(TwoFloat::MIN)
    }
    fn min_positive_value() -> Self {
        Self(TwoFloat::MIN_POSITIVE)
    }
    fn max_value() -> Self {
        Self(TwoFloat::MAX)
    }
    fn epsilon() -> Self {
        Self::new(4.930380657631324e-32)
    }
    fn is_nan(self) -> bool {
        self.0.hi().is_nan() || self.0.lo().is_nan()
    }
    fn is_infinite(self) -> bool {
        self.0.hi().is_infinite()
    }
    fn is_finite(self) -> bool {
        self.0.hi().is_finite() && self.0.lo().is_finite()
    }
    fn is_normal(self) -> bool {
        self.0.hi().is_normal()
    }
    fn classify(self) -> FpCategory {
        self.0.hi().classify()
    }
    fn abs(self) -> Self {
        if self.0.hi() < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::new(self.0.hi().signum())
    }
    fn is_sign_positive(self) -> bool {
        self.0.hi().is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.0.hi().is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, p: Self) -> Self {
        if p == p.trunc() && p.abs() < Self::new(2.0e9) {
            return self.powi(p.0.hi() as i32);
        }
        (p * self.ln()).exp()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut y = Self::new(self.0.hi().cbrt());
        let three = Self::new(3.0);
        for _ in 0..2 {
            y = y - (y * y * y - self) / (three * y * y);
        }
        y
    }
    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn atan2(self, other: Self) -> Self {
        Self(<TwoFloat as Float>::atan2(self.0, other.0))
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let half_pi = Self::FRAC_PI_2();
        let k = (self / half_pi).round();
        let t = self - k * half_pi;
        let (s, c) = taylor_sin_cos(t);
        match (k.0.hi() as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tanh(self) -> Self {
        self.sinh() / self.cosh()
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.0.hi().integer_decode()
    }
    fn to_degrees(self) -> Self {
        self * Self::new(180.0) / Self::PI()
    }
    fn to_radians(self) -> Self {
        self * Self::PI() / Self::new(180.0)
    }
    unary!(
        floor, ceil, round, trunc, fract, sqrt, exp, exp2, ln, log2, log10, asin, acos,
        atan, exp_m1, ln_1p, sinh, cosh, asinh, acosh, atanh
    );
}

// Series for |t| <= pi/4; the terms fall below 2^-106 well before 30.
fn taylor_sin_cos(t: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let t2 = t * t;
    let tiny = DoubleDouble::new(1e-34);
    let mut sin = t;
    let mut cos = DoubleDouble::one();
    let mut term = t;
    let mut k = 1.0;
    loop {
        term = -term * t2 / DoubleDouble::new((k + 1.0) * (k + 2.0));
        sin += term;
        k += 2.0;
        if term.abs() < tiny || k > 60.0 {
            break;
        }
    }
    let mut term = DoubleDouble::one();
    let mut k = 0.0;
    loop {
        term = -term * t2 / DoubleDouble::new((k + 1.0) * (k + 2.0));
        cos += term;
        k += 2.0;
        if term.abs() < tiny || k > 60.0 {
            break;
        }
    }
    (sin, cos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble::new(x)
    }

    #[test]
    fn division_keeps_the_low_word() {
        let third = dd(1.0) / dd(3.0);
        let back = third * dd(3.0) - dd(1.0);
        assert!(back.to_f64_nearest().abs() < 1e-31, "{back:?}");
        let q = dd(2.0).sqrt() / dd(7.0).sqrt();
        let err = (q * q * dd(7.0) - dd(2.0)).to_f64_nearest();
        assert!(err.abs() < 1e-30, "{err}");
    }

    #[test]
    fn conversions_are_faithful() {
        assert_eq!(<DoubleDouble as FromPrimitive>::from_f64(0.5).unwrap().to_f64(), Some(0.5));
        assert_eq!(dd(-2.75).to_f64(), Some(-2.75));
        assert_eq!(dd(7.9).to_i64(), Some(7));
        assert_eq!(<DoubleDouble as NumCast>::from(3usize).unwrap().hi(), 3.0);
    }

    #[test]
    fn powers_and_trig() {
        let x = dd(1.1);
        let p = x.powi(-3) * x.powi(3) - dd(1.0);
        assert!(p.to_f64_nearest().abs() < 1e-30);
        let (s, c) = dd(0.7).sin_cos();
        let one = s * s + c * c - dd(1.0);
        assert!(one.to_f64_nearest().abs() < 1e-30, "{one:?}");
        let s5 = dd(5.0).sin().to_f64_nearest();
        assert!((s5 - 5f64.sin()).abs() < 1e-15);
        let c = dd(-2.0).cos().to_f64_nearest();
        assert!((c - 2f64.cos()).abs() < 1e-15);
        assert!((dd(27.0).cbrt() - dd(3.0)).to_f64_nearest().abs() < 1e-30);
        assert!((dd(0.3).tan().to_f64_nearest() - 0.3f64.tan()).abs() < 1e-15);
    }
}
