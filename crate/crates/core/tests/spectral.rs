use std::f64::consts::PI;

use levy_spectral::spectral::{pi_even, pi_odd, pi_star, transform, verify_diagonalization, verify_generator};
use levy_spectral::{GridFunction, LevyExponent, QuadratureConfig, RealGrid};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn bump(a: f64, b: f64) -> GridFunction {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    GridFunction::from_fn(RealGrid::linear(a, b, 201).unwrap(), move |x| {
        let u = (x - c) / r;
        if u.abs() < 1.0 {
            (-1.0 / (1.0 - u * u)).exp()
        } else {
            0.0
        }
    })
}

fn on_grid(grid: &RealGrid, values: Vec<f64>) -> GridFunction {
    let n = values.len();
    GridFunction::new(grid.clone(), values, vec![0.0; n])
}

#[test]
fn round_trip_recovers_bumps() {
    let exp = LevyExponent::stable(1.5).unwrap();
    let lambdas = RealGrid::linear(0.0, 40.0, 801).unwrap();
    let positive = RealGrid::from_points(lambdas.points()[1..].to_vec()).unwrap();
    let x = RealGrid::linear(-4.0, 4.0, 161).unwrap();
    for f in [bump(0.5, 2.5), bump(-3.0, -1.0)] {
        let mut even = vec![0.0];
        even.extend(pi_even(&exp, &f, &positive, &cfg()).unwrap());
        let mut odd = vec![0.0];
        odd.extend(pi_odd(&f, &positive, &cfg()).unwrap());
        let back = pi_star(&exp, &on_grid(&lambdas, even), &on_grid(&lambdas, odd), &x, &cfg()).unwrap();
        let h = 0.05;
        let err: f64 = x
            .iter()
            .zip(&back.values)
            .map(|(x, b)| (b / PI - f.interpolate(x)).powi(2) * h)
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-3, "L² error {err}");
    }
}

#[test]
fn brownian_diagonalization() {
    let l = RealGrid::from_points(vec![0.25, 0.5, 1.0, 2.0, 3.0]).unwrap();
    let d = verify_diagonalization(&LevyExponent::brownian(), &bump(1.0, 3.0), 0.5, &l, &cfg()).unwrap();
    assert!(d < 1e-3, "{d}");
}

#[test]
fn stable_diagonalization() {
    let l = RealGrid::from_points(vec![0.5, 1.0, 2.0]).unwrap();
    let exp = LevyExponent::stable(1.5).unwrap();
    let d = verify_diagonalization(&exp, &bump(1.0, 3.0), 1.0, &l, &cfg()).unwrap();
    assert!(d < 1e-3, "{d}");
    assert_eq!(verify_diagonalization(&exp, &bump(1.0, 3.0), 0.0, &l, &cfg()).unwrap(), 0.0);
}

#[test]
fn generator_weak_form() {
    let l = RealGrid::from_points(vec![0.5, 1.0]).unwrap();
    let d = verify_generator(&LevyExponent::brownian(), &bump(1.0, 3.0), 0.5, 0.01, &l, &cfg()).unwrap();
    assert!(d < 1e-3, "{d}");
}

#[test]
fn odd_sector_follows_the_free_semigroup() {
    // for odd f, Π_odd P_t f = e^{−tΨ}Π_odd f, and the free evolution of an odd function is
    // computable directly: P_t sin(μ·) = e^{−tΨ(μ)} sin(μ·)
    let exp = LevyExponent::stable(1.5).unwrap();
    let f = GridFunction::from_fn(RealGrid::linear(-3.0, 3.0, 601).unwrap(), |x| x * (-x * x).exp());
    let l = RealGrid::from_points(vec![0.5, 1.0, 2.0]).unwrap();
    let t = 0.5;
    let evolved = levy_spectral::spectral::killed_semigroup(&exp, &f, t, &RealGrid::linear(-25.0, 25.0, 501).unwrap(), &cfg())
        .unwrap();
    let lhs = pi_odd(&evolved, &l, &cfg()).unwrap();
    let rhs = pi_odd(&f, &l, &cfg()).unwrap();
    for ((lam, a), b) in l.iter().zip(lhs).zip(rhs) {
        let want = (-t * exp.psi(lam)).exp() * b;
        assert!((a - want).abs() < 1e-3, "{lam}: {a} {want}");
    }
}

#[test]
fn transform_examples() {
    let exp = LevyExponent::stable(1.5).unwrap();
    let l = RealGrid::single(1.0);
    let sign_exp = GridFunction::from_fn(RealGrid::linear(-40.0, 40.0, 8001).unwrap(), |x| x.signum() * (-x.abs()).exp());
    let t = transform(&exp, &sign_exp, &l, &cfg()).unwrap();
    assert!((t.odd_part[0] - 1.0).abs() < 1e-6);
    assert!(t.even_part[0].abs() < 1e-8);

    let even = GridFunction::from_fn(RealGrid::linear(-3.0, 3.0, 601).unwrap(), |x| (-x * x).exp());
    assert!(pi_odd(&even, &RealGrid::linear(0.5, 4.0, 8).unwrap(), &cfg()).unwrap().iter().all(|v| v.abs() < 1e-10));
}

#[test]
fn pi_star_of_brownian_indicator_vanishes_at_origin() {
    let ind = GridFunction::from_fn(RealGrid::linear(1.0, 2.0, 11).unwrap(), |_| 1.0);
    let zero = GridFunction::from_fn(RealGrid::linear(0.0, 1.0, 3).unwrap(), |_| 0.0);
    let r = pi_star(&LevyExponent::brownian(), &ind, &zero, &RealGrid::single(0.0), &cfg()).unwrap();
    assert_eq!(r.values[0], 0.0);
}
