//! Central differences with one level of Richardson extrapolation.

use crate::error::Result;
use crate::scalar::Real;

/// `(g(x + h) − g(x − h)) / 2h`.
pub fn central_first<T: Real>(g: &impl Fn(T) -> Result<T>, x: T, h: T) -> Result<T> {
    Ok((g(x + h)? - g(x - h)?) / (h + h))
}

/// `(g(x + h) − 2g(x) + g(x − h)) / h²`.
pub fn central_second<T: Real>(g: &impl Fn(T) -> Result<T>, x: T, h: T) -> Result<T> {
    let two = T::lit(2.0);
    Ok((g(x + h)? - two * g(x)? + g(x - h)?) / (h * h))
}

/// `(4 D(h/2) − D(h)) / 3` for a second-order difference `D`.
pub fn richardson<T: Real>(coarse: T, fine: T) -> T {
    (T::lit(4.0) * fine - coarse) / T::lit(3.0)
}

/// Richardson-extrapolated first derivative.
pub fn derivative<T: Real>(g: &impl Fn(T) -> Result<T>, x: T, h: T) -> Result<T> {
    let coarse = central_first(g, x, h)?;
    let fine = central_first(g, x, h * T::lit(0.5))?;
    Ok(richardson(coarse, fine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extrapolated_derivative_is_fourth_order() {
        let g = |x: f64| Ok(x.sin());
        let d = derivative(&g, 0.4, 1e-2).unwrap();
        assert!((d - 0.4f64.cos()).abs() < 1e-9);
        let d2 = central_second(&g, 0.4, 1e-3).unwrap();
        assert!((d2 + 0.4f64.sin()).abs() < 1e-6);
    }
}
