use std::f64::consts::PI;

use levy_spectral::kernels::{
    free_density, hitting_prob_finite, hitting_tail, killed_density, killed_kernel_grid, laplace_hitting, resolvent_u,
};
use levy_spectral::quadrature::gauss_legendre;
use levy_spectral::{LevyExponent, QuadratureConfig, RealGrid, ResolventSet};
use num_complex::Complex64;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn stable(alpha: f64) -> LevyExponent {
    LevyExponent::stable(alpha).unwrap()
}

#[test]
fn free_density_examples() {
    let g = 1.0 / (4.0 * PI).sqrt();
    assert!((free_density(&stable(2.0), 1.0, 0.0, &cfg()).unwrap() - g).abs() < 1e-9);
    assert!((free_density(&stable(2.0), 1.0, 2.0, &cfg()).unwrap() - g * (-1f64).exp()).abs() < 1e-9);
    let want = statrs::function::gamma::gamma(1.0 + 1.0 / 1.5) / PI;
    assert!((free_density(&stable(1.5), 1.0, 0.0, &cfg()).unwrap() - want).abs() < 1e-9);
}

#[test]
fn killed_density_examples() {
    let absorbed = (1.0 - (-1f64).exp()) / (4.0 * PI).sqrt();
    assert!((killed_density(&stable(2.0), 1.0, 1.0, 1.0, &cfg()).unwrap() - absorbed).abs() < 1e-8);
    let exp = stable(1.5);
    assert_eq!(killed_density(&exp, 1.0, 0.0, 1.0, &cfg()).unwrap(), 0.0);
    let a = killed_density(&exp, 1.0, 1.0, 2.0, &cfg()).unwrap();
    let b = killed_density(&exp, 1.0, 2.0, 1.0, &cfg()).unwrap();
    assert!((a - b).abs() < 1e-8);
}

#[test]
fn kernel_grid_is_dominated_and_symmetric() {
    let x = RealGrid::linear(-3.0, 3.0, 13).unwrap();
    for spec in ["stable:alpha=1.5", "rel:alpha=1.5,m=1"] {
        let exp: LevyExponent = spec.parse().unwrap();
        let k = killed_kernel_grid(&exp, 0.5, &x, &x, &cfg()).unwrap();
        assert!(k.domination_violation() < 1e-9, "{spec}");
        for i in 0..13 {
            for j in 0..13 {
                assert!((k.values[i][j] - k.values[j][i]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn chapman_kolmogorov() {
    // ∫ p_s(1, z) p_s(z, 1) dz = p_{2s}(1, 1), the kernel being symmetric
    let exp = stable(1.5);
    let gl = gauss_legendre(12);
    let mut nodes = Vec::new();
    let mut edges: Vec<f64> = (0..10).rev().map(|k| 0.5f64.powi(k)).collect();
    edges.insert(0, 0.0);
    edges.extend((2..=40).map(|k| k as f64));
    for w in edges.windows(2) {
        for (z, wt) in gl.mapped(w[0], w[1]) {
            nodes.push((z, wt));
            nodes.push((-z, wt));
        }
    }
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let y = RealGrid::from_points(nodes.iter().map(|n| n.0).collect()).unwrap();
    let k = killed_kernel_grid(&exp, 0.5, &RealGrid::single(1.0), &y, &cfg()).unwrap();
    let lhs: f64 = k.values[0].iter().zip(&nodes).map(|(p, n)| p * p * n.1).sum();
    let rhs = killed_density(&exp, 1.0, 1.0, 1.0, &cfg()).unwrap();
    assert!((lhs - rhs).abs() < 1e-3, "{lhs} {rhs}");
}

#[test]
fn hitting_tail_is_monotone_and_bounded() {
    let exp = stable(1.5);
    let p = hitting_prob_finite(&exp, 1.0, &cfg()).unwrap();
    assert!((p - 1.0).abs() < 1e-3, "{p}");
    let tails: Vec<f64> = [0.25, 0.5, 1.0, 2.0, 4.0, 16.0]
        .iter()
        .map(|&t| hitting_tail(&exp, t, 1.0, &cfg()).unwrap())
        .collect();
    for w in tails.windows(2) {
        assert!(w[1] < w[0], "{tails:?}");
    }
    assert!(tails[0] <= p + 1e-3);
}

#[test]
fn stable_hitting_tail_matches_scaled_eigenfunction_integral() {
    // P_x(τ₀ > t) = (α sin(π/α)/π) ∫₀^∞ e^{−tλ^α} F_1(λx)/λ dλ, here via u = λx
    use levy_spectral::eigenfunctions::{compute_eigendata, f_value};
    let exp = stable(1.5);
    let e = compute_eigendata(&exp, 1.0, &cfg()).unwrap();
    let (t, x) = (1.0f64, 2.0f64);
    // F_1(u)/u ~ u^{-1/2} at 0, hence the deep grading
    let gl = gauss_legendre(40);
    let mut edges = vec![0.0];
    edges.extend((0..50).rev().map(|k| 0.5f64.powi(k)));
    edges.extend((2..=60).map(|k| 0.5 * k as f64));
    let mut total = 0.0;
    for w in edges.windows(2) {
        for (u, wt) in gl.mapped(w[0], w[1]) {
            let f = f_value(&exp, &e, u, &cfg()).unwrap().value;
            total += wt * (-t * (u / x).powf(1.5)).exp() * f / u;
        }
    }
    let want = 1.5 * (PI / 1.5).sin() / PI * total;
    let got = hitting_tail(&exp, t, x, &cfg()).unwrap();
    assert!((got - want).abs() < 1e-8, "{got} {want}");
}

#[test]
fn finite_hitting_probabilities() {
    assert!((hitting_prob_finite(&stable(2.0), 5.0, &cfg()).unwrap() - 1.0).abs() < 1e-3);
    let mix: LevyExponent = "mix:alpha=0.5,beta=1".parse().unwrap();
    let p = hitting_prob_finite(&mix, 1.0, &cfg()).unwrap();
    assert!(p > 0.0 && p < 1.0, "{p}");
}

#[test]
fn resolvent_examples() {
    let b = stable(2.0);
    assert!((resolvent_u(&b, 1.0, 0.0, &cfg()).unwrap() - 0.5).abs() < 1e-9);
    assert!((resolvent_u(&b, 4.0, 1.0, &cfg()).unwrap() - (-2f64).exp() / 4.0).abs() < 1e-9);
    assert!((laplace_hitting(&b, 1.0, 1.0, &cfg()).unwrap() - (-1f64).exp()).abs() < 1e-8);
    let exp = stable(1.5);
    assert_eq!(laplace_hitting(&exp, 1.0, 0.0, &cfg()).unwrap(), 1.0);
    let u0 = resolvent_u(&exp, 0.7, 0.0, &cfg()).unwrap();
    for x in [0.3, 1.0, 5.0] {
        assert!(resolvent_u(&exp, 0.7, x, &cfg()).unwrap() <= u0);
    }
}

#[test]
fn stieltjes_functions() {
    let set = ResolventSet::new(stable(2.0), cfg()).unwrap();
    assert!((set.phi(1.0).unwrap().value - 0.5).abs() < 1e-9);
    assert!((set.phi_xi(1.0, 1.0).unwrap().value - 0.25).abs() < 1e-9);

    let set = ResolventSet::new(stable(1.5), cfg()).unwrap();
    for z in [0.1, 1.0, 10.0] {
        let r = set.phi_xi(1.0, z).unwrap().value / set.phi(z).unwrap().value;
        assert!(r > 0.0 && r <= 1.0, "{r}");
    }
    // a Stieltjes function maps the upper half-plane to the closed lower one
    for z in [Complex64::new(-1.0, 0.5), Complex64::new(0.0, 1.0), Complex64::new(2.0, 3.0)] {
        let r = set.phi_xi_complex(1.0, z).unwrap().value / set.phi_complex(z).unwrap().value;
        assert!(r.im <= 1e-10, "{z}: {r}");
    }
}

#[test]
fn boundary_value_examples() {
    let set = ResolventSet::new(stable(2.0), cfg()).unwrap();
    let (a, b) = set.phi_plus_boundary(1.0, 1.0).unwrap();
    assert!((a - Complex64::new(0.0, -0.5)).norm() < 1e-9);
    assert!((b - Complex64::new(-0.25, -0.25)).norm() < 1e-9);
}

#[test]
fn capital_phi_laplace_transform_is_phi_tilde() {
    let set = ResolventSet::new(stable(1.5), cfg()).unwrap();
    assert!((set.capital_phi(1.0, 3.0, 0.0).unwrap().value - PI / 2.0 * 0.75).abs() < 1e-4);
    let gl = gauss_legendre(10);
    let edges = [0.0, 0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 40.0];
    let mut lhs = 0.0;
    for w in edges.windows(2) {
        for (t, wt) in gl.mapped(w[0], w[1]) {
            lhs += wt * (-t).exp() * set.capital_phi(1.0, 1.0, t).unwrap().value;
        }
    }
    let rhs = PI * set.phi_tilde(1.0, 1.0, 1.0).unwrap().value;
    assert!((lhs - rhs).abs() < 1e-4, "{lhs} {rhs}");
}
