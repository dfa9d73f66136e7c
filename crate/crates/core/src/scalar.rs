//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All geometry is written once against [`Real`]; `f32`, `f64` and the
//! double-double [`DoubleDouble`] implement it. The double-double type is
//! what the finite-difference operator oracle uses when rounding would
//! otherwise swamp the truncation error.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use crate::dd::DoubleDouble;

/// Floating point scalar usable throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Unit roundoff of the representation (half the gap between 1 and the
    /// next representable number, or an honest bound for multi-word types).
    fn unit_roundoff() -> Self;

    /// Converts an `f64` literal. Panics only for values the type cannot
    /// represent at all, which never happens for finite `f64`s.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 literal is representable")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count is representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn unit_roundoff() -> Self {
        f32::EPSILON / 2.0
    }
}

impl Real for f64 {
    fn unit_roundoff() -> Self {
        f64::EPSILON / 2.0
    }
}

impl Real for DoubleDouble {
    fn unit_roundoff() -> Self {
        // 2^-104
        DoubleDouble::new(4.930380657631324e-32)
    }
}

/// Orientation sign used by the Gauss map: `-1` for odd `n`, `+1` for even `n`.
#[inline]
pub fn epsilon_sign(n: usize) -> i32 {
    if n % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `epsilon_sign(n)` as a scalar.
#[inline]
pub fn epsilon<T: Real>(n: usize) -> T {
    T::lit(f64::from(epsilon_sign(n)))
}

/// Binomial coefficient as a scalar; exact for the small arguments used here.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    T::lit(acc as f64)
}

/// Relative difference `|a - b| / max(1, |a|, |b|)`-style with a caller scale.
#[inline]
pub fn rel_diff<T: Real>(a: T, b: T, floor: T) -> T {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}
