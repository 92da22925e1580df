//! The transforms Π = (Π_even, Π_odd), their adjoint Π*, and numerical checks
//! that Π is unitary up to √π and diagonalizes the killed semigroup.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::eigenfunctions::{compute_eigendata, f_values_fast};
use crate::error::{Error, Result};
use crate::exponents::LevyExponent;
use crate::grid::{GridFunction, RealGrid};
use crate::kernels::{LambdaRule, ResolventSet};
use crate::quadrature::{gauss_legendre, QuadratureConfig};

/// Gauss points per grid cell.
const CELL_ORDER: usize = 8;
/// Geometric refinement steps in cells that end at the origin.
const ORIGIN_GRADE: i32 = 30;
/// Half-width of the window on which P_t f is integrated against F_λ.
const SEMIGROUP_REACH: f64 = 60.0;

/// Πf sampled on a λ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformPair {
    pub lambda_grid: RealGrid,
    pub even_part: Vec<f64>,
    pub odd_part: Vec<f64>,
}

/// Gauss nodes and weights covering the span of `points`; cells touching 0 are split there
/// and refined geometrically towards it, where F_λ has an algebraic singularity.
fn span_nodes(points: &[f64]) -> Vec<(f64, f64)> {
    let gl = gauss_legendre(CELL_ORDER);
    let mut out = Vec::new();
    let mut push = |a: f64, b: f64| {
        if b > a {
            out.extend(gl.mapped(a, b));
        }
    };
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut pieces = vec![(a, b)];
        if a < 0.0 && b > 0.0 {
            pieces = vec![(a, 0.0), (0.0, b)];
        }
        for (a, b) in pieces {
            if a == 0.0 || b == 0.0 {
                let (s, len) = if a == 0.0 { (1.0, b) } else { (-1.0, -a) };
                for k in 0..ORIGIN_GRADE {
                    let (lo, hi) = (len * 0.5f64.powi(k + 1), len * 0.5f64.powi(k));
                    if s > 0.0 {
                        push(lo, hi);
                    } else {
                        push(-hi, -lo);
                    }
                }
            } else {
                push(a, b);
            }
        }
    }
    out
}

fn sorted_abs(xs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = xs.map(f64::abs).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn position(sorted: &[f64], x: f64) -> usize {
    sorted.binary_search_by(|p| p.total_cmp(&x.abs())).expect("registered point")
}

fn check_lambdas(grid: &RealGrid) -> Result<()> {
    match grid.iter().find(|l| !(*l > 0.0) || !l.is_finite()) {
        Some(l) => Err(Error::domain(format!("transform needs λ > 0, got {l}"))),
        None => Ok(()),
    }
}

/// Σ w f(x) F_λ(x) over weighted samples, for every λ of the grid.
fn even_sums(
    exp: &LevyExponent,
    samples: &[(f64, f64)],
    lambda_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    check_lambdas(lambda_grid)?;
    let pts = sorted_abs(samples.iter().map(|s| s.0));
    let idx: Vec<usize> = samples.iter().map(|s| position(&pts, s.0)).collect();
    lambda_grid
        .points()
        .par_iter()
        .map(|&l| {
            let e = compute_eigendata(exp, l, cfg)?;
            let (f, _) = f_values_fast(exp, &e, &pts, cfg)?;
            Ok(samples.iter().zip(&idx).map(|(s, &i)| s.1 * f[i]).sum())
        })
        .collect()
}

fn odd_sums(samples: &[(f64, f64)], lambda_grid: &RealGrid) -> Vec<f64> {
    lambda_grid
        .iter()
        .map(|l| samples.iter().map(|&(x, wf)| wf * (l * x).sin()).sum())
        .collect()
}

/// (x, w·f(x)) on Gauss nodes over the grid of f.
fn weighted_samples(f: &GridFunction) -> Vec<(f64, f64)> {
    span_nodes(f.grid.points())
        .into_iter()
        .map(|(x, w)| (x, w * f.interpolate(x)))
        .collect()
}

/// Π_even f(λ) = ∫ f(x) F_λ(x) dx, f interpolated from its grid (zero outside).
pub fn pi_even(exp: &LevyExponent, f: &GridFunction, lambda_grid: &RealGrid, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    even_sums(exp, &weighted_samples(f), lambda_grid, cfg)
}

/// Π_odd f(λ) = ∫ f(x) sin(λx) dx.
pub fn pi_odd(f: &GridFunction, lambda_grid: &RealGrid, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    check_lambdas(lambda_grid)?;
    Ok(odd_sums(&weighted_samples(f), lambda_grid))
}

/// Both components of Πf.
pub fn transform(
    exp: &LevyExponent,
    f: &GridFunction,
    lambda_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<TransformPair> {
    let samples = weighted_samples(f);
    Ok(TransformPair {
        lambda_grid: lambda_grid.clone(),
        even_part: even_sums(exp, &samples, lambda_grid, cfg)?,
        odd_part: odd_sums(&samples, lambda_grid),
    })
}

/// Π*(f₁, f₂)(x) = ∫₀^∞ f₁(λ)F_λ(x) dλ + ∫₀^∞ f₂(λ) sin(λx) dλ, with f₁, f₂ interpolated
/// from their λ grids and zero outside them.
pub fn pi_star(
    exp: &LevyExponent,
    f1: &GridFunction,
    f2: &GridFunction,
    x_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<GridFunction> {
    for g in [f1, f2] {
        if g.grid.points().first().is_some_and(|&l| l < 0.0) {
            return Err(Error::domain("Π* takes functions of λ ≥ 0"));
        }
    }
    let xs = x_grid.points();
    let pts = sorted_abs(xs.iter().copied());
    let idx: Vec<usize> = xs.iter().map(|&x| position(&pts, x)).collect();
    let even_nodes: Vec<(f64, f64)> = weighted_samples(f1).into_iter().filter(|s| s.0 > 0.0 && s.1 != 0.0).collect();
    let parts: Vec<Vec<f64>> = even_nodes
        .par_iter()
        .map(|&(l, wf)| {
            let e = compute_eigendata(exp, l, cfg)?;
            let (f, _) = f_values_fast(exp, &e, &pts, cfg)?;
            Ok(idx.iter().map(|&i| wf * f[i]).collect())
        })
        .collect::<Result<_>>()?;
    let odd_nodes = weighted_samples(f2);
    let values = (0..xs.len())
        .map(|k| {
            let even: f64 = parts.iter().map(|p| p[k]).sum();
            let odd: f64 = odd_nodes.iter().map(|&(l, wf)| wf * (l * xs[k]).sin()).sum();
            even + odd
        })
        .collect();
    Ok(GridFunction::new(x_grid.clone(), values, vec![0.0; xs.len()]))
}

/// ∫₀^∞ Π_even e_{ξ₁} Π_even e_{ξ₂} dλ for e_ξ(x) = e^{−ξ|x|}, from the closed form of
/// Π_even e_ξ; returns (computed, expected 2π/(ξ₁+ξ₂), |computed − expected|).
pub fn verify_parseval(exp: &LevyExponent, xi1: f64, xi2: f64, cfg: &QuadratureConfig) -> Result<(f64, f64, f64)> {
    let set = ResolventSet::new(exp.clone(), *cfg)?;
    let phi = set.capital_phi(xi1, xi2, 0.0)?;
    let computed = 4.0 / (xi1 * xi2) * phi.value;
    let expected = 2.0 * PI / (xi1 + xi2);
    Ok((computed, expected, (computed - expected).abs()))
}

/// Weighted samples on a symmetric window around the origin, graded towards 0.
fn window_samples(reach: f64) -> Vec<(f64, f64)> {
    let gl = gauss_legendre(16);
    let mut edges = vec![0.0];
    edges.extend((0..12).rev().map(|k| 0.5f64.powi(k)));
    edges.extend((2..=reach.ceil() as usize).map(|k| k as f64));
    let mut out = Vec::new();
    for w in edges.windows(2) {
        for (x, wt) in gl.mapped(w[0], w[1]) {
            out.push((x, wt));
            out.push((-x, wt));
        }
    }
    out
}

/// P_t^{R∖0} f on a grid, f interpolated from its samples and zero outside them.
pub fn killed_semigroup(
    exp: &LevyExponent,
    f: &GridFunction,
    t: f64,
    x_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<GridFunction> {
    let samples = weighted_samples(f);
    let pts = sorted_abs(samples.iter().map(|s| s.0).chain(x_grid.iter()));
    let rule = LambdaRule::new(exp, t, pts, cfg)?;
    let apply = rule.apply(&samples);
    let values: Vec<f64> = x_grid.points().par_iter().map(|&x| apply(x)).collect();
    let err = rule.g_error();
    Ok(GridFunction::new(x_grid.clone(), values, vec![err; x_grid.len()]))
}

/// max over the λ grid of |Π(P_t^{R∖0} f) − e^{−tΨ}Πf|, both components.
///
/// P_t^{R∖0} f is formed from the spectral representation of the kernel on a window of half-width
/// 60 around the support of f, then transformed back by quadrature in x. At t = 0 the semigroup is
/// the identity and the deviation is 0 by definition.
pub fn verify_diagonalization(
    exp: &LevyExponent,
    f: &GridFunction,
    t: f64,
    lambda_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_lambdas(lambda_grid)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    let samples = weighted_samples(f);
    let support = samples.iter().fold(0.0f64, |m, s| m.max(s.0.abs()));
    let window = window_samples(SEMIGROUP_REACH + support);
    let pts = sorted_abs(samples.iter().chain(&window).map(|s| s.0));
    let rule = LambdaRule::new(exp, t, pts, cfg)?;
    let apply = rule.apply(&samples);
    let evolved: Vec<(f64, f64)> = window.par_iter().map(|&(x, w)| (x, w * apply(x))).collect();

    let lhs_even = even_sums(exp, &evolved, lambda_grid, cfg)?;
    let lhs_odd = odd_sums(&evolved, lambda_grid);
    let rhs_even = even_sums(exp, &samples, lambda_grid, cfg)?;
    let rhs_odd = odd_sums(&samples, lambda_grid);
    let mut worst = 0.0f64;
    for (k, l) in lambda_grid.iter().enumerate() {
        let damp = (-t * exp.psi(l)).exp();
        worst = worst
            .max((lhs_even[k] - damp * rhs_even[k]).abs())
            .max((lhs_odd[k] - damp * rhs_odd[k]).abs());
    }
    Ok(worst)
}

/// Weak form of ΠA f = −ΨΠf: max over λ of |(ΠP_{t+δ}f − ΠP_{t−δ}f)/(2δ) + Ψ ΠP_t f|,
/// every ΠP_s f computed as in [`verify_diagonalization`].
pub fn verify_generator(
    exp: &LevyExponent,
    f: &GridFunction,
    t: f64,
    delta: f64,
    lambda_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_lambdas(lambda_grid)?;
    if !(delta > 0.0 && t > delta) {
        return Err(Error::domain(format!("need 0 < δ < t, got δ = {delta}, t = {t}")));
    }
    let samples = weighted_samples(f);
    let support = samples.iter().fold(0.0f64, |m, s| m.max(s.0.abs()));
    let window = window_samples(SEMIGROUP_REACH + support);
    let pts = sorted_abs(samples.iter().chain(&window).map(|s| s.0));
    let transformed = |s: f64| -> Result<(Vec<f64>, Vec<f64>)> {
        let rule = LambdaRule::new(exp, s, pts.clone(), cfg)?;
        let apply = rule.apply(&samples);
        let evolved: Vec<(f64, f64)> = window.par_iter().map(|&(x, w)| (x, w * apply(x))).collect();
        Ok((even_sums(exp, &evolved, lambda_grid, cfg)?, odd_sums(&evolved, lambda_grid)))
    };
    let (ep, op) = transformed(t + delta)?;
    let (em, om) = transformed(t - delta)?;
    let (e0, o0) = transformed(t)?;
    let mut worst = 0.0f64;
    for (k, l) in lambda_grid.iter().enumerate() {
        let psi = exp.psi(l);
        worst = worst
            .max(((ep[k] - em[k]) / (2.0 * delta) + psi * e0[k]).abs())
            .max(((op[k] - om[k]) / (2.0 * delta) + psi * o0[k]).abs());
    }
    Ok(worst)
}
