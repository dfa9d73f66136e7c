use num_bigint::BigInt;
use proptest::prelude::*;
use rothyp::audit::{
    abcd_constants, beta_sum, d_expanded_coeffs, d_factored, eq13_coefficients, eq14_coefficients, eval_poly, gothic_constants,
    t0_grouped, ALPHA_QUARTIC, FRAK_E_COEFFS, FRAK_F_COEFFS,
};

#[test]
fn expanded_d_matches_factored_form() {
    let coeffs = d_expanded_coeffs();
    for n in -10..=20 {
        let n = BigInt::from(n);
        assert_eq!(eval_poly(&coeffs, &n), d_factored(&n));
    }
}

#[test]
fn reports_are_reproducible() {
    for n in 3..=12 {
        let a = serde_json::to_string(&beta_sum(n).unwrap()).unwrap();
        let b = serde_json::to_string(&beta_sum(n).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

proptest! {
    #[test]
    fn gothic_identities(n in 3i64..200) {
        let abcd = abcd_constants(n).unwrap();
        let g = gothic_constants(n).unwrap();
        let nb = BigInt::from(n);
        let sq = (&nb + 1) * (&nb + 1);
        prop_assert_eq!(&g.frak_c.0 - &abcd.a.0 * &g.frak_f.0, &abcd.d.0 * &sq);
        prop_assert_eq!(&g.frak_a.0, &(&abcd.a.0 * (-&g.frak_e.0) + &abcd.b.0 * &sq));
        prop_assert_eq!(g.frak_e.0 + eval_poly(&ALPHA_QUARTIC, &nb), BigInt::from(0));
        prop_assert_eq!(eval_poly(&FRAK_E_COEFFS, &nb), -eval_poly(&ALPHA_QUARTIC, &nb));
        prop_assert_eq!(g.frak_f.0, eval_poly(&FRAK_F_COEFFS, &nb));
    }

    #[test]
    fn beta_signs(n in 3i64..40) {
        let r = beta_sum(n).unwrap();
        let sum = r.betas.iter().fold(BigInt::from(0), |acc, b| acc + &b.0);
        prop_assert_eq!(sum, r.beta_sum.0.clone());
        prop_assert_eq!(r.nonvanishing, r.beta_sum.0 != BigInt::from(0));
    }

    #[test]
    fn t0_regrouping(n in 3usize..12, angle in -3.0f64..3.0, lambda in -2.0f64..2.0, phi in -2.0f64..2.0) {
        let direct = eq14_coefficients(n, angle, lambda, phi).t0;
        let grouped = t0_grouped(n, angle, lambda, phi);
        let k = eq13_coefficients(n, angle, lambda, phi);
        let s = angle.sin();
        let e = n as i32;
        let scale = (n as f64 - 2.0)
            * ((k.d * k.d * s.powi(e - 1)).abs()
                + ((n as f64 - 3.0) * k.b * k.d * s.powi(e - 2)).abs()
                + (k.b * k.b * s.powi(e - 3)).abs());
        prop_assert!((direct - grouped).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn eq14_leading_term_vanishes_without_parameters(n in 3usize..12, angle in -3.0f64..3.0) {
        let t = eq14_coefficients(n, angle, 0.0, 0.0);
        prop_assert_eq!(t.t3, 0.0);
        let k = eq13_coefficients(n, angle, 0.0, 0.0);
        prop_assert_eq!(k.a, 0.0);
    }
}
