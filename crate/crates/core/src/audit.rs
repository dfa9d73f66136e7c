//! Exact evaluation of the integer constants that close the elimination
//! argument, and the floating coefficient functions feeding it.
//!
//! The final step concludes `λ = 0` from a leading term
//! `(β₁ + β₂ + β₃ + β₄) λ¹⁸ sin^{15n+21} R`; this is sound only where the
//! sum is nonzero, which [`beta_sum`] decides in exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Arbitrary-precision integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact(pub BigInt);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<BigInt> for Exact {
    fn from(v: BigInt) -> Self {
        Self(v)
    }
}

/// Coefficients in increasing degree.
pub const A_COEFFS: [i64; 8] = [4545, -10227, 6906, -796, -807, 325, -44, 2];
pub const B_COEFFS: [i64; 9] = [5851, -81929, 162003, -140907, 67223, -18843, 3089, -273, 10];
pub const C_COEFFS: [i64; 10] = [-137246, 486104, -670392, 502291, -230910, 68261, -13028, 1549, -104, 3];
/// `𝔡 = 3n⁵ − 56n⁴ + 398n³ − 1380n² + 2367n − 1604`.
pub const FRAK_D_COEFFS: [i64; 6] = [-1604, 2367, -1380, 398, -56, 3];
/// `𝔢 = −(2n⁴ − 29n³ + 129n² − 219n + 105)`.
pub const FRAK_E_COEFFS: [i64; 5] = [-105, 219, -129, 29, -2];
/// `𝔣 = n⁴ − 24n³ + 194n² − 624n + 709`, also the quartic factor of `d`.
pub const FRAK_F_COEFFS: [i64; 5] = [709, -624, 194, -24, 1];
/// The quartic multiplying `a` in `𝔞`.
pub const ALPHA_QUARTIC: [i64; 5] = [105, -219, 129, -29, 2];

/// Horner evaluation of an integer polynomial.
pub fn eval_poly(coeffs: &[i64], n: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * n + BigInt::from(c))
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `d = −3(n−7)(n−3)(n−1)(n⁴ − 24n³ + 194n² − 624n + 709)` in factored form.
pub fn d_factored(n: &BigInt) -> BigInt {
    int(-3) * (n - 7) * (n - 3) * (n - 1) * eval_poly(&FRAK_F_COEFFS, n)
}

/// `d` expanded to a degree-7 polynomial by multiplying out the factors.
pub fn d_expanded_coeffs() -> Vec<i64> {
    let mut poly = vec![-3i64];
    for root in [7i64, 3, 1] {
        poly = poly_mul(&poly, &[-root, 1]);
    }
    poly_mul(&poly, &FRAK_F_COEFFS)
}

fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn check_n(n: i64) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::InvalidDimension { n: n.max(0) as usize, min: 3 });
    }
    Ok(int(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abcd {
    pub a: Exact,
    pub b: Exact,
    pub c: Exact,
    pub d: Exact,
}

/// `a, b, c, d` at `n ≥ 3`.
pub fn abcd_constants(n: i64) -> Result<Abcd> {
    let n = check_n(n)?;
    Ok(abcd_unchecked(&n))
}

fn abcd_unchecked(n: &BigInt) -> Abcd {
    Abcd {
        a: eval_poly(&A_COEFFS, n).into(),
        b: eval_poly(&B_COEFFS, n).into(),
        c: eval_poly(&C_COEFFS, n).into(),
        d: d_factored(n).into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gothic {
    pub frak_d: Exact,
    pub frak_e: Exact,
    pub frak_f: Exact,
    pub frak_a: Exact,
    pub frak_b: Exact,
    pub frak_c: Exact,
}

/// `𝔡, 𝔢, 𝔣` and `𝔞 = a·q + b(n+1)²`, `𝔟 = a𝔡 + c(n+1)²`, `𝔠 = a𝔣 + d(n+1)²`
/// with `q = 2n⁴ − 29n³ + 129n² − 219n + 105`.
pub fn gothic_constants(n: i64) -> Result<Gothic> {
    let n = check_n(n)?;
    let abcd = abcd_unchecked(&n);
    Ok(gothic_from(&n, &abcd))
}

fn gothic_from(n: &BigInt, abcd: &Abcd) -> Gothic {
    let sq = (n + 1) * (n + 1);
    let fd = eval_poly(&FRAK_D_COEFFS, n);
    let fe = eval_poly(&FRAK_E_COEFFS, n);
    let ff = eval_poly(&FRAK_F_COEFFS, n);
    let q = eval_poly(&ALPHA_QUARTIC, n);
    let a = &abcd.a.0;
    Gothic {
        frak_a: Exact(a * &q + &abcd.b.0 * &sq),
        frak_b: Exact(a * &fd + &abcd.c.0 * &sq),
        frak_c: Exact(a * &ff + &abcd.d.0 * &sq),
        frak_d: fd.into(),
        frak_e: fe.into(),
        frak_f: ff.into(),
    }
}

/// Exact constants of the final step at one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofAuditReport {
    pub n: i64,
    pub abcd: Abcd,
    pub gothic: Gothic,
    pub betas: [Exact; 4],
    pub beta_sum: Exact,
    /// `Σβ ≠ 0`; the step to `λ = 0` needs this.
    pub nonvanishing: bool,
}

/// `β₁ … β₄` and their sum at `n ≥ 3`.
pub fn beta_sum(n: i64) -> Result<ProofAuditReport> {
    let nb = check_n(n)?;
    let abcd = abcd_unchecked(&nb);
    let g = gothic_from(&nb, &abcd);
    let (fa, fb, fc) = (&g.frak_a.0, &g.frak_b.0, &g.frak_c.0);
    let (fd, fe, ff) = (&g.frak_d.0, &g.frak_e.0, &g.frak_f.0);
    let pre = num_traits::pow(&nb - 2, 15);
    let u: BigInt = fa * ff + fc * fe;
    let v: BigInt = fa * fd + fb * fe;
    let sq: BigInt = (&nb + 1) * (&nb + 1);
    let b1: BigInt = &pre * &sq * &u * &u * &u;
    let b2: BigInt = &pre * fe * &v * &u * &u;
    let b2 = -b2;
    let b3: BigInt = &pre * fd * &v * &v * &u;
    let b3 = -b3;
    let b4: BigInt = &pre * ff * &v * &v * &v;
    let sum = &b1 + &b2 + &b3 + &b4;
    Ok(ProofAuditReport {
        n,
        abcd,
        gothic: g,
        nonvanishing: !sum.is_zero(),
        beta_sum: sum.into(),
        betas: [b1.into(), b2.into(), b3.into(), b4.into()],
    })
}

/// Reports for every `n` in `range`.
pub fn audit_range(range: std::ops::RangeInclusive<i64>) -> Result<Vec<ProofAuditReport>> {
    range.map(beta_sum).collect()
}

/// Aligned text table of `n`, `d(n)`, `Σβ` and the nonvanishing flag.
pub fn audit_table(reports: &[ProofAuditReport]) -> String {
    let width = reports.iter().map(|r| r.beta_sum.0.to_string().len()).max().unwrap_or(1).max(8);
    let mut out = format!("{:>4}  {:>6}  {:>width$}  {}\n", "n", "d(n)=0", "beta_sum", "nonvanishing");
    for r in reports {
        let d_zero = if r.abcd.d.0.is_zero() { "yes" } else { "no" };
        let flag = if r.nonvanishing { "yes" } else { "NO (gap)" };
        out.push_str(&format!("{:>4}  {:>6}  {:>width$}  {}\n", r.n, d_zero, r.beta_sum, flag));
    }
    out
}

/// Sign of `Σβ`, `−1`, `0` or `1`.
pub fn beta_sign(report: &ProofAuditReport) -> i32 {
    let s = &report.beta_sum.0;
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

/// `A, B, C, D` of the `R'` relation, evaluated as stated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eq13Coefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> Eq13Coefficients<T> {
    /// `R' = (A f^{n−1} + B)/(C fⁿ + D f)`.
    pub fn r_prime(&self, f: T, n: usize) -> Result<T> {
        let den = self.c * f.powi(n as i32) + self.d * f;
        if den == T::zero() {
            return Err(Error::SingularFormula("C f^n + D f vanishes"));
        }
        Ok((self.a * f.powi(n as i32 - 1) + self.b) / den)
    }
}

pub fn eq13_coefficients<T: Real>(n: usize, angle: T, lambda: T, phi: T) -> Eq13Coefficients<T> {
    let nn = T::from_count(n);
    let (s, c) = angle.sin_cos();
    let l = T::lit;
    let a = ((nn * nn - l(7.0) * nn + l(14.0)) * lambda * s.powi(3) + (nn * nn - l(8.0) * nn + l(17.0)) * phi * s) * c;
    let b = -(nn - l(7.0)) * (nn - l(3.0)) * (nn - l(2.0)) * s.powi(n as i32) * c;
    let cc = -(lambda * (nn + l(1.0)) * s * s + (nn - l(3.0)) * phi) * c;
    let m3 = nn - l(3.0);
    let d = (nn - l(2.0)) * (m3 * m3 * m3 - l(4.0) * (nn * nn - l(6.0) * nn + l(10.0))) * s.powi(n as i32 - 1) * c;
    Eq13Coefficients { a, b, c: cc, d }
}

/// `t_{3(n−1)}, t_{2(n−1)}, t_{n−1}, t₀` of the polynomial relation in `f^{n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eq14Coefficients<T> {
    pub t3: T,
    pub t2: T,
    pub t1: T,
    pub t0: T,
}

impl<T: Real> Eq14Coefficients<T> {
    /// `t₃ f^{3(n−1)} + t₂ f^{2(n−1)} + t₁ f^{n−1} + t₀`.
    pub fn residual(&self, f: T, n: usize) -> T {
        let x = f.powi(n as i32 - 1);
        ((self.t3 * x + self.t2) * x + self.t1) * x + self.t0
    }
}

/// The `t` list as stated. The `t_{n−1}` entry carries a bare `A` in its
/// third term where `AB` would be dimensionally consistent; it is kept
/// verbatim.
pub fn eq14_coefficients<T: Real>(n: usize, angle: T, lambda: T, phi: T) -> Eq14Coefficients<T> {
    let k = eq13_coefficients(n, angle, lambda, phi);
    let (a, b, c, d) = (k.a, k.b, k.c, k.d);
    let s = angle.sin();
    let nn = T::from_count(n);
    let m2 = nn - T::lit(2.0);
    let m3 = nn - T::lit(3.0);
    let two = T::lit(2.0);
    let w = phi + lambda * s * s;
    let p1 = s.powi(n as i32 - 1);
    let p2 = s.powi(n as i32 - 2);
    let p3 = s.powi(n as i32 - 3);
    Eq14Coefficients {
        t3: -w * c * c,
        t2: m2 * c * c * p1 + m3 * m2 * a * c * p2 + m2 * a * a * p3 - two * w * c * d,
        t1: two * m2 * c * d * p1 + m3 * m2 * (a * d + b * c) * p2 + two * m2 * a * p3 - w * d * d,
        t0: m2 * d * d * p1 + m3 * m2 * b * d * p2 + m2 * b * b * p3,
    }
}

/// `t₀ = (n−2)[D² sin^{n−1}R + (n−3)BD sin^{n−2}R + B² sin^{n−3}R]`.
pub fn t0_grouped<T: Real>(n: usize, angle: T, lambda: T, phi: T) -> T {
    let k = eq13_coefficients(n, angle, lambda, phi);
    let s = angle.sin();
    let nn = T::from_count(n);
    (nn - T::lit(2.0))
        * (k.d * k.d * s.powi(n as i32 - 1)
            + (nn - T::lit(3.0)) * k.b * k.d * s.powi(n as i32 - 2)
            + k.b * k.b * s.powi(n as i32 - 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_zeros_and_values() {
        assert_eq!(abcd_constants(3).unwrap().a.0, int(432));
        assert!(abcd_constants(7).unwrap().d.0.is_zero());
        assert!(abcd_constants(3).unwrap().d.0.is_zero());
        assert!(d_factored(&int(1)).is_zero());
        assert_eq!(gothic_constants(7).unwrap().frak_f.0, int(16));
        assert!(abcd_constants(2).is_err());
    }

    #[test]
    fn expanded_d_matches_factored() {
        let coeffs = d_expanded_coeffs();
        assert_eq!(coeffs.len(), 8);
        for n in -10..=20 {
            let n = int(n);
            assert_eq!(eval_poly(&coeffs, &n), d_factored(&n));
        }
    }

    #[test]
    fn seven_keeps_beta_four() {
        let r = beta_sum(7).unwrap();
        assert!(!r.betas[3].0.is_zero());
    }

    #[test]
    fn coefficients_vanish_with_cosine() {
        let k = eq13_coefficients(5, std::f64::consts::FRAC_PI_2, 0.7f64, 0.3);
        for v in [k.a, k.b, k.c, k.d] {
            assert!(v.abs() < 1e-13);
        }
        assert_eq!(eq13_coefficients(7, 0.4f64, 0.7, 0.3).b, 0.0);
    }

    #[test]
    fn t0_two_ways() {
        for (n, r) in [(4, 0.3f64), (6, 1.1), (9, -0.8)] {
            let direct = eq14_coefficients(n, r, 0.6, -0.4).t0;
            let grouped = t0_grouped(n, r, 0.6, -0.4);
            assert!((direct - grouped).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn report_serializes_as_strings() {
        let json = serde_json::to_value(beta_sum(4).unwrap()).unwrap();
        assert!(json["beta_sum"].is_string());
        assert!(json["abcd"]["a"].is_string());
    }
}
