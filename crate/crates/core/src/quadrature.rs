//! Gauss–Legendre quadrature, generic over the scalar type.

use crate::scalar::Real;

/// Nodes and weights of an `m`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Computes the rule by Newton iteration on `P_m`, carried out in `T`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "need at least one node");
        let mut nodes = vec![T::zero(); m];
        let mut weights = vec![T::zero(); m];
        let two = T::lit(2.0);
        for i in 0..m.div_ceil(2) {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut x = T::lit(guess);
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::unit_roundoff() * T::lit(4.0) {
                    let (_, d) = legendre(m, x);
                    dp = d;
                    break;
                }
            }
            let w = two / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate(&self, f: &impl Fn(T) -> T, a: T, b: T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(mid + half * x))
            * half
    }
}

fn legendre<T: Real>(m: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=m {
        let kf = T::from_count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf = T::from_count(m);
    let d = mf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

const MAX_DEPTH: usize = 16;

/// Embedded pair of rules used for adaptive panel refinement.
#[derive(Clone, Debug)]
pub struct AdaptiveQuadrature<T> {
    coarse: GaussLegendre<T>,
    fine: GaussLegendre<T>,
    tol: T,
}

impl<T: Real> AdaptiveQuadrature<T> {
    /// Absolute tolerance `1e-12` where the precision allows it; tighter for
    /// multi-word scalars and looser for single precision.
    pub fn new() -> Self {
        let u = T::unit_roundoff();
        let tol = if u.as_f64() > 1e-17 {
            (u * T::lit(64.0)).max(T::lit(1e-12))
        } else {
            u * T::lit(1e4)
        };
        Self::with_tolerance(tol)
    }

    pub fn with_tolerance(tol: T) -> Self {
        Self { coarse: GaussLegendre::new(10), fine: GaussLegendre::new(20), tol }
    }

    pub fn tolerance(&self) -> T {
        self.tol
    }

    /// Integrates `f` over `[a, b]` (either orientation).
    pub fn integrate(&self, f: &impl Fn(T) -> T, a: T, b: T) -> T {
        if a == b {
            return T::zero();
        }
        let width = (b - a).abs();
        let panels = (width.as_f64() / 0.25).ceil().max(1.0) as usize;
        let step = (b - a) / T::from_count(panels);
        let per_panel = self.tol / T::from_count(panels);
        (0..panels).fold(T::zero(), |acc, i| {
            let lo = a + step * T::from_count(i);
            let hi = if i + 1 == panels { b } else { lo + step };
            acc + self.refine(f, lo, hi, per_panel, 0)
        })
    }

    fn refine(&self, f: &impl Fn(T) -> T, a: T, b: T, tol: T, depth: usize) -> T {
        let fine = self.fine.integrate(f, a, b);
        let coarse = self.coarse.integrate(f, a, b);
        let err = (fine - coarse).abs();
        let floor = fine.abs() * T::unit_roundoff() * T::lit(64.0);
        if err <= tol || err <= floor || depth >= MAX_DEPTH {
            return fine;
        }
        let mid = (a + b) * T::lit(0.5);
        let half = tol * T::lit(0.5);
        self.refine(f, a, mid, half, depth + 1) + self.refine(f, mid, b, half, depth + 1)
    }
}

impl<T: Real> Default for AdaptiveQuadrature<T> {
    fn default() -> Self {
        Self::new()
    }
}
