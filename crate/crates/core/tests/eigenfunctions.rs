use std::f64::consts::PI;

use levy_spectral::cli::half_line_laplace;
use levy_spectral::eigenfunctions::{compute_eigendata, eval_F, eval_G, eval_G_laplace, g_integral, g_symbol, laplace_F};
use levy_spectral::{LevyExponent, QuadratureConfig, RealGrid};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn stable(alpha: f64) -> LevyExponent {
    LevyExponent::stable(alpha).unwrap()
}

#[test]
fn phase_examples() {
    let e = compute_eigendata(&stable(1.5), 1.0, &cfg()).unwrap();
    assert!((e.theta - PI / 6.0).abs() < 1e-8);
    assert!((e.k - 1.0 / 3f64.sqrt()).abs() < 1e-8);
    assert!((e.cos_theta.powi(2) + e.sin_theta.powi(2) - 1.0).abs() < 1e-14);
    assert!(compute_eigendata(&stable(2.0), 3.0, &cfg()).unwrap().theta.abs() < 1e-10);
    for l in [0.3, 1.0, 7.0] {
        let e = compute_eigendata(&stable(1.1), l, &cfg()).unwrap();
        assert!((e.theta - (PI / 1.1 - PI / 2.0)).abs() < 1e-6, "{l}: {}", e.theta);
    }
}

#[test]
fn symbol_examples() {
    let e = compute_eigendata(&stable(1.5), 1.0, &cfg()).unwrap();
    let c = (PI / 6.0).cos();
    assert!((g_symbol(&stable(1.5), &e, 1.0) - c * 0.25).abs() < 1e-6);
    assert!((g_symbol(&stable(1.5), &e, 0.0) - c * 0.5).abs() < 1e-8);
    let b = compute_eigendata(&stable(2.0), 1.3, &cfg()).unwrap();
    for xi in [0.0, 0.5, 1.3, 4.0] {
        assert!(g_symbol(&stable(2.0), &b, xi).abs() < 1e-8);
    }
}

#[test]
fn stable_scaling() {
    let exp = stable(1.5);
    let x = RealGrid::linear(0.0, 3.0, 13).unwrap();
    let x2 = RealGrid::linear(0.0, 6.0, 13).unwrap();
    let two = eval_F(&exp, &compute_eigendata(&exp, 2.0, &cfg()).unwrap(), &x, &cfg()).unwrap();
    let one = eval_F(&exp, &compute_eigendata(&exp, 1.0, &cfg()).unwrap(), &x2, &cfg()).unwrap();
    for i in 0..13 {
        assert!((two.f_values[i] - one.f_values[i]).abs() < 1e-6);
        assert!((two.g_values[i] - one.g_values[i]).abs() < 1e-6);
    }
}

#[test]
fn g_is_monotone_and_positive_for_cbf_families() {
    let x = RealGrid::linear(0.0, 15.0, 61).unwrap();
    for spec in ["stable:alpha=1.5", "mix:alpha=1.5,beta=1", "rel:alpha=1.5,m=1", "stable:alpha=1.2"] {
        let exp: LevyExponent = spec.parse().unwrap();
        for l in [0.5, 2.0] {
            let e = compute_eigendata(&exp, l, &cfg()).unwrap();
            let g = eval_G_laplace(&exp, &e, &x, &cfg()).unwrap();
            assert!((g.values[0] - e.sin_theta).abs() < 1e-6, "{spec} {l}");
            for w in g.values.windows(2) {
                assert!(w[1] >= -1e-8 && w[1] <= w[0] + 1e-10, "{spec} {l}: {w:?}");
            }
        }
    }
}

#[test]
fn routes_agree_on_a_symmetric_grid() {
    let exp: LevyExponent = "rel:alpha=1.5,m=1".parse().unwrap();
    let x = RealGrid::linear(-5.0, 5.0, 21).unwrap();
    let e = compute_eigendata(&exp, 1.0, &cfg()).unwrap();
    let a = eval_G(&exp, &e, &x, &cfg()).unwrap();
    let b = eval_G_laplace(&exp, &e, &x, &cfg()).unwrap();
    for i in 0..21 {
        assert!((a.values[i] - b.values[i]).abs() < 1e-5);
        assert_eq!(a.values[i], a.values[20 - i]);
    }
}

#[test]
fn cauchy_like_index_approaches_the_sine_envelope() {
    let exp = stable(1.1);
    let e = compute_eigendata(&exp, 1.0, &cfg()).unwrap();
    let x = RealGrid::from_points(vec![5.0, 20.0, 80.0]).unwrap();
    let p = eval_F(&exp, &e, &x, &cfg()).unwrap();
    let gap: Vec<f64> = p.sine_envelope().iter().zip(&p.f_values).map(|(s, f)| (s - f).abs()).collect();
    assert!(gap[0] > gap[1] && gap[1] > gap[2], "{gap:?}");
    assert!(gap[2] < 1e-3, "{gap:?}");
}

#[test]
fn laplace_transform_matches_direct_quadrature() {
    for spec in ["stable:alpha=1.5", "rel:alpha=1.5,m=1"] {
        let exp: LevyExponent = spec.parse().unwrap();
        let e = compute_eigendata(&exp, 1.0, &cfg()).unwrap();
        for xi in [0.5, 1.0, 2.0] {
            let closed = laplace_F(&exp, &e, xi, &cfg()).unwrap();
            let direct = 2.0 * half_line_laplace(&exp, &e, xi, &cfg()).unwrap();
            assert!((closed - direct).abs() < 1e-5, "{spec} {xi}: {closed} {direct}");
        }
    }
}

#[test]
fn laplace_transform_is_nonnegative() {
    for spec in ["stable:alpha=1.5", "mix:alpha=1.5,beta=1", "rel:alpha=1.5,m=1", "trunc:alpha=1.5,c=1"] {
        let exp: LevyExponent = spec.parse().unwrap();
        for l in [0.5, 1.0, 3.0] {
            let e = compute_eigendata(&exp, l, &cfg()).unwrap();
            for xi in [0.05, 0.3, 1.0, 4.0, 20.0] {
                let v = laplace_F(&exp, &e, xi, &cfg()).unwrap();
                assert!(v >= -1e-8, "{spec} λ={l} ξ={xi}: {v}");
            }
        }
    }
}

#[test]
fn brownian_laplace_transform() {
    let e = compute_eigendata(&stable(2.0), 1.0, &cfg()).unwrap();
    assert!((laplace_F(&stable(2.0), &e, 1.0, &cfg()).unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn g_integral_examples() {
    let exp = stable(1.5);
    let one = g_integral(&exp, &compute_eigendata(&exp, 1.0, &cfg()).unwrap());
    let two = g_integral(&exp, &compute_eigendata(&exp, 2.0, &cfg()).unwrap());
    assert!((one - 0.216506).abs() < 1e-6);
    assert!((two - 0.108253).abs() < 1e-6);
    assert!(g_integral(&stable(2.0), &compute_eigendata(&stable(2.0), 1.0, &cfg()).unwrap()).abs() < 1e-10);
}

#[test]
fn brownian_plus_poisson_phase_changes_sign() {
    let exp: LevyExponent = "bmpoisson:rate=9".parse().unwrap();
    let signs: Vec<f64> = (0..=10)
        .map(|k| compute_eigendata(&exp, 4.0 + 0.1 * k as f64, &cfg()).unwrap().theta)
        .collect();
    assert!(signs.iter().any(|t| *t < 0.0) && signs.iter().any(|t| *t > 0.0), "{signs:?}");
}
