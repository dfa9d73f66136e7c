//! Adaptive Dormand–Prince 5(4) integration.

use crate::error::{Error, Result};
use crate::scalar::Real;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (equal to the last row of `A`).
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
/// Fourth-order embedded weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Step-size controlled integrator.
#[derive(Clone, Copy, Debug)]
pub struct DormandPrince {
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for DormandPrince {
    fn default() -> Self {
        Self { atol: 1e-10, rtol: 1e-10, max_steps: 1_000_000 }
    }
}

/// End state of one integration.
#[derive(Clone, Debug)]
pub struct OdeOutcome<T> {
    pub y: Vec<T>,
    pub accepted: usize,
    pub rejected: usize,
}

impl DormandPrince {
    pub fn with_tolerance(tol: f64) -> Self {
        Self { atol: tol, rtol: tol, ..Self::default() }
    }

    /// Integrates `y' = rhs(t, y)` from `t0` to `t1`.
    pub fn integrate<T: Real>(
        &self,
        rhs: &impl Fn(T, &[T]) -> Vec<T>,
        t0: T,
        y0: &[T],
        t1: T,
    ) -> Result<OdeOutcome<T>> {
        let dim = y0.len();
        let mut y = y0.to_vec();
        let span = t1 - t0;
        if span == T::zero() {
            return Ok(OdeOutcome { y, accepted: 0, rejected: 0 });
        }
        let dir = span.signum();
        let mut t = t0;
        let mut h = span * T::lit(1e-3);
        let (atol, rtol) = (T::lit(self.atol), T::lit(self.rtol));
        let min_step = span.abs() * T::lit(1e-14);
        let mut k: Vec<Vec<T>> = Vec::with_capacity(7);
        let (mut accepted, mut rejected) = (0, 0);
        let mut first = rhs(t, &y);
        while (t1 - t) * dir > T::zero() {
            if accepted + rejected >= self.max_steps {
                return Err(Error::Integration(format!("step budget exhausted at t = {}", t.as_f64())));
            }
            if (t + h - t1) * dir > T::zero() {
                h = t1 - t;
            }
            k.clear();
            k.push(first.clone());
            for s in 1..7 {
                let mut ys = y.clone();
                for (j, kj) in k.iter().enumerate() {
                    let a = T::lit(A[s][j]);
                    if a != T::zero() {
                        for i in 0..dim {
                            ys[i] = ys[i] + h * a * kj[i];
                        }
                    }
                }
                k.push(rhs(t + h * T::lit(C[s]), &ys));
            }
            let mut y5 = y.clone();
            let mut err = T::zero();
            for i in 0..dim {
                let (mut d5, mut d4) = (T::zero(), T::zero());
                for s in 0..7 {
                    d5 = d5 + T::lit(B5[s]) * k[s][i];
                    d4 = d4 + T::lit(B4[s]) * k[s][i];
                }
                y5[i] = y[i] + h * d5;
                let scale = atol + rtol * y[i].abs().max(y5[i].abs());
                let e = (h * (d5 - d4)) / scale;
                err = err + e * e;
            }
            let err = (err / T::from_count(dim.max(1))).sqrt();
            if !err.is_finite() {
                h = h * T::lit(0.25);
                rejected += 1;
                if h.abs() < min_step {
                    return Err(Error::Integration(format!("non-finite derivative near t = {}", t.as_f64())));
                }
                continue;
            }
            let factor = if err == T::zero() {
                T::lit(5.0)
            } else {
                (T::lit(0.9) * err.powf(T::lit(-0.2))).max(T::lit(0.2)).min(T::lit(5.0))
            };
            if err <= T::one() {
                t = t + h;
                y = y5;
                first = k[6].clone();
                accepted += 1;
            } else {
                rejected += 1;
            }
            h = h * factor;
            if h.abs() < min_step && (t1 - t) * dir > min_step {
                return Err(Error::Integration(format!("step size underflow at t = {}", t.as_f64())));
            }
        }
        Ok(OdeOutcome { y, accepted, rejected })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let out = DormandPrince::default().integrate(&|_t: f64, y: &[f64]| vec![y[0]], 0.0, &[1.0], 2.0).unwrap();
        assert!((out.y[0] - 2f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn harmonic_oscillator_backwards() {
        let rhs = |_t: f64, y: &[f64]| vec![y[1], -y[0]];
        let out = DormandPrince::default().integrate(&rhs, 1.0, &[1f64.sin(), 1f64.cos()], -1.0).unwrap();
        assert!((out.y[0] - (-1f64).sin()).abs() < 1e-9);
        assert!((out.y[1] - (-1f64).cos()).abs() < 1e-9);
    }
}
