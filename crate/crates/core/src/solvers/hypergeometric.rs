//! The Gauss hypergeometric series `₂F₁(a, b; c; z)` for `|z| < 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Summation stops once a term falls below this fraction of the partial sum.
pub const TERM_TOL: f64 = 1e-15;
pub const MAX_TERMS: usize = 100_000;

/// Value of the series with a bound on the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Hypergeometric<T> {
    pub value: T,
    pub terms: usize,
    /// Bound on the neglected tail, `|t| q / (1 − q)` once the term ratio
    /// stays below `q < 1`; infinite when no such bound was reached.
    pub tail_bound: T,
}

/// `Σ (a)ₖ(b)ₖ / ((c)ₖ k!) zᵏ`.
pub fn gauss_hypergeometric<T: Real>(a: T, b: T, c: T, z: T) -> Result<Hypergeometric<T>> {
    if c <= T::zero() && c == c.round() {
        return Err(Error::InvalidHypergeometric { c: c.as_f64() });
    }
    if !(z.abs() < T::one()) {
        return Err(Error::SeriesDivergence { z: z.abs().as_f64() });
    }
    let tol = T::lit(TERM_TOL);
    let mut sum = T::one();
    let mut term = T::one();
    let mut terms = 1;
    let mut tail_bound = T::infinity();
    for k in 0..MAX_TERMS {
        let kk = T::from_count(k);
        let ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + T::one())) * z;
        term = term * ratio;
        sum = sum + term;
        terms += 1;
        if term == T::zero() {
            tail_bound = T::zero();
            break;
        }
        // The ratio moves monotonically towards z once k exceeds the
        // parameters, so the larger of the two bounds every later ratio.
        let next = T::from_count(k + 1);
        let later = ((a + next) * (b + next) / ((c + next) * (next + T::one())) * z).abs();
        let q = later.max(z.abs());
        let monotone = next > a.abs() + b.abs() + c.abs();
        if monotone && q < T::one() {
            tail_bound = term.abs() * q / (T::one() - q);
        }
        if term.abs() < tol * sum.abs() && tail_bound.is_finite() {
            break;
        }
    }
    Ok(Hypergeometric { value: sum, terms, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        let h = gauss_hypergeometric(0.3, 1.7, 2.5, 0.0).unwrap();
        assert_eq!(h.value, 1.0);
    }

    #[test]
    fn logarithm_identity() {
        let z = 0.5f64;
        let h = gauss_hypergeometric(1.0, 1.0, 2.0, z).unwrap();
        let oracle = -(1.0 - z).ln() / z;
        assert!((h.value - oracle).abs() < 1e-14 * oracle);
        assert!(h.tail_bound < 1e-14);
    }

    #[test]
    fn arcsine_identity() {
        let x = 0.6f64;
        let h = gauss_hypergeometric(0.5, 0.5, 1.5, x * x).unwrap();
        assert!((x * h.value - x.asin()).abs() < 1e-14);
    }

    #[test]
    fn errors() {
        assert!(matches!(gauss_hypergeometric(1.0, 1.0, -2.0, 0.1), Err(Error::InvalidHypergeometric { .. })));
        assert!(matches!(gauss_hypergeometric(1.0, 1.0, 2.0, 1.0), Err(Error::SeriesDivergence { .. })));
    }
}
