use std::f64::consts::PI;

use levy_spectral::eigenfunctions::{compute_eigendata, g_value};
use levy_spectral::spectral::{pi_even, pi_odd};
use levy_spectral::{Error, GridFunction, LevyExponent, QuadratureConfig, RealGrid};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = LevyExponent> {
    prop_oneof![
        (1.05..2.0f64).prop_map(|a| LevyExponent::stable(a).unwrap()),
        (0.2..1.9f64, 0.1..3.0f64).prop_map(|(a, b)| LevyExponent::brownian_plus_stable(a, b).unwrap()),
        (1.05..1.95f64, 0.2..3.0f64).prop_map(|(a, m)| LevyExponent::relativistic(a, m).unwrap()),
        (0.3..1.9f64, 0.2..3.0f64).prop_map(|(a, c)| LevyExponent::truncated_stable(a, c).unwrap()),
        (0.5..12.0f64).prop_map(|r| LevyExponent::brownian_plus_poisson(r).unwrap()),
    ]
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #[test]
    fn psi_is_nonnegative_and_even(exp in family(), xi in -50.0..50.0f64) {
        let v = exp.psi(xi);
        prop_assert!(v >= 0.0);
        prop_assert!((v - exp.psi(-xi)).abs() <= 1e-12 * (1.0 + v));
    }

    #[test]
    fn derivatives_match_differences(exp in family(), xi in 0.1..20.0f64) {
        let h = 1e-5 * xi;
        let d1 = (exp.psi(xi + h) - exp.psi(xi - h)) / (2.0 * h);
        let d2 = (exp.psi_prime(xi + h) - exp.psi_prime(xi - h)) / (2.0 * h);
        prop_assert!((d1 - exp.psi_prime(xi)).abs() <= 1e-5 * (1.0 + d1.abs()), "{} {}", d1, exp.psi_prime(xi));
        prop_assert!((d2 - exp.psi_second(xi)).abs() <= 1e-4 * (1.0 + d2.abs()), "{} {}", d2, exp.psi_second(xi));
    }

    #[test]
    fn psi_inverse_round_trip(exp in family(), xi in 0.01..30.0f64) {
        prop_assume!(exp.require_standing_hypotheses().is_ok());
        let back = exp.psi_inverse(exp.psi(xi));
        prop_assert!((back - xi).abs() <= 1e-8 * (1.0 + xi), "{} {}", back, xi);
    }

    #[test]
    fn grid_spec_round_trip(min in -10.0..10.0f64, span in 0.1..20.0f64, count in 2usize..500) {
        let max = min + span;
        let g: RealGrid = format!("{min}:{max}:{count}").parse().unwrap();
        prop_assert_eq!(g.len(), count);
        prop_assert_eq!(g.points()[0], min);
        prop_assert!((g.points()[count - 1] - max).abs() <= 1e-12 * (1.0 + max.abs()));
        prop_assert!(g.is_increasing());
    }

    #[test]
    fn log_grid_spec(min in 0.001..1.0f64, ratio in 1.5..1e4f64, count in 2usize..200) {
        let g: RealGrid = format!("{min}:{}:{count}:log", min * ratio).parse().unwrap();
        prop_assert_eq!(g.len(), count);
        let p = g.points();
        if count > 2 {
            let (r0, r1) = (p[1] / p[0], p[count - 1] / p[count - 2]);
            prop_assert!((r0 - r1).abs() <= 1e-9 * r0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phase_lies_in_the_open_interval(exp in family(), lambda in 0.05..20.0f64) {
        let e = match (exp.require_standing_hypotheses(), compute_eigendata(&exp, lambda, &cfg())) {
            (Ok(()), Ok(e)) => e,
            (Err(_), Err(Error::Assumption(_))) => return Ok(()),
            (h, e) => panic!("{exp} at λ = {lambda}: {h:?} {e:?}"),
        };
        prop_assert!(e.theta > -PI / 2.0 && e.theta < PI / 2.0);
        prop_assert!((e.cos_theta.hypot(e.sin_theta) - 1.0).abs() < 1e-14);
        if exp.known_concave_half() {
            prop_assert!(e.theta >= -1e-9, "{} at λ = {}: {}", exp, lambda, e.theta);
        }
    }

    #[test]
    fn stable_phase_ignores_lambda(alpha in 1.05..2.0f64, lambda in 0.01..100.0f64) {
        let exp = LevyExponent::stable(alpha).unwrap();
        let e = compute_eigendata(&exp, lambda, &cfg()).unwrap();
        prop_assert!((e.theta - (PI / alpha - PI / 2.0)).abs() < 1e-6);
    }

    #[test]
    fn g_stays_under_its_envelope(alpha in 1.1..1.95f64, lambda in 0.2..5.0f64, x in -20.0..20.0f64) {
        let exp = LevyExponent::stable(alpha).unwrap();
        let e = compute_eigendata(&exp, lambda, &cfg()).unwrap();
        let g = g_value(&exp, &e, x, &cfg()).unwrap().value;
        prop_assert!(g >= -1e-8 && g <= e.sin_theta + 1e-8, "{}", g);
    }

    #[test]
    fn parity_annihilation(shift in 0.2..2.0f64, width in 0.3..1.5f64, lambda in 0.2..6.0f64) {
        let grid = RealGrid::linear(-6.0, 6.0, 1201).unwrap();
        let even = GridFunction::from_fn(grid.clone(), |x| (-((x.abs() - shift) / width).powi(2)).exp());
        let odd = GridFunction::from_fn(grid, |x| x.signum() * (-((x.abs() - shift) / width).powi(2)).exp());
        let l = RealGrid::single(lambda);
        prop_assert!(pi_odd(&even, &l, &cfg()).unwrap()[0].abs() < 1e-10);
        let exp = LevyExponent::stable(1.5).unwrap();
        prop_assert!(pi_even(&exp, &odd, &l, &cfg()).unwrap()[0].abs() < 1e-10);
    }
}
