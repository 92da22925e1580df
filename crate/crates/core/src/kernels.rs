//! Free and killed transition densities, resolvents, the Stieltjes family
//! φ(z), φ(ξ, z), φ(ξ₁, ξ₂, z) and the law of the hitting time of the origin.

use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cache::{lambda_key, LambdaKey, Memo};
use crate::eigenfunctions::{compute_eigendata, f_value, f_values_fast, k_weighted, l_weight, EigenData};
use crate::error::{Error, Result};
use crate::exponents::LevyExponent;
use crate::grid::RealGrid;
use crate::quadrature::{
    cosine_transform_at, improper_integral, integrate_with_breaks, kronrod_nodes, one_minus_cosine_transform_at,
    CosineSymbol, Estimate, Improper, QuadratureConfig, Tail, Tolerance,
};

/// e^{-DENSITY_CUTOFF} is treated as zero in the free density symbol.
const DENSITY_CUTOFF: f64 = 50.0;
/// Number of geometric panels between the first λ-panel and the origin.
const GRADE: i32 = 40;

/// Holds the first error raised inside an integrand that must return plain numbers.
struct Trap(Mutex<Option<Error>>);

impl Trap {
    fn new() -> Self {
        Trap(Mutex::new(None))
    }

    fn catch(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.lock().unwrap();
                if slot.is_none() {
                    *slot = Some(e);
                }
                f64::NAN
            }
        }
    }

    /// The trapped error wins over whatever the quadrature made of the NaNs.
    fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.0.into_inner().unwrap() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

/// Λ with tΨ(λ) ≥ level for λ ≥ Λ.
fn truncation_radius(exp: &LevyExponent, t: f64, level: f64) -> f64 {
    exp.psi_inverse(level / t)
}

/// Λ(t) for the spectral integrals: e^{−tΨ(λ)} < abs_tol past it, with a small margin.
pub fn spectral_radius(exp: &LevyExponent, t: f64, cfg: &QuadratureConfig) -> f64 {
    truncation_radius(exp, t, -cfg.abs_tol.ln() + 2.0)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be positive and finite, got {t}")))
    }
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("z must be positive and finite, got {z}")))
    }
}

/// ∫₀^Λ f over fixed panels of width `h` (Λ rounded up to a multiple of h),
/// refined geometrically towards λ = 0. The fixed edges let repeated calls
/// with different t share cached per-λ data.
fn spectral_integral(
    f: &(dyn Fn(f64) -> Result<f64> + Sync),
    lambda_max: f64,
    h: f64,
    tol: Tolerance,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let panels = lambda_panels(h, lambda_max);
    let tol = tol.split(panels.len() + 1);
    let trap = Trap::new();
    let g = |l: f64| trap.catch(f(l));
    let parts: Result<Vec<Estimate>> = panels
        .par_iter()
        .map(|&(a, b)| {
            // a panel that runs out of splits keeps its estimate; the sum is judged as a whole
            integrate_with_breaks(&g, &[a, b], tol, cfg.max_subdivisions).or_else(|e| match e {
                Error::Accuracy { estimate, error, .. } => Ok(Estimate {
                    value: estimate,
                    error,
                    evaluations: 0,
                }),
                e => Err(e),
            })
        })
        .collect();
    let parts = trap.finish(parts)?;
    let mut total = parts.into_iter().fold(Estimate::zero(), |s, p| s + p);
    // [0, ε]: the integrand is at worst an integrable power there
    let eps = h * 0.5f64.powi(GRADE);
    let rem = remainder(f, eps)?;
    total.value += rem.0;
    total.error += rem.1;
    Ok(total)
}

/// ∫₀^ε f for f ≈ cλ^p near 0, p read off from f(ε), f(ε/2), f(ε/4).
fn remainder(f: &(dyn Fn(f64) -> Result<f64> + Sync), eps: f64) -> Result<(f64, f64)> {
    let (f1, f2, f4) = (f(eps)?, f(0.5 * eps)?, f(0.25 * eps)?);
    let crude = (eps * f1, 2.0 * eps * f1.abs());
    if f1 == 0.0 || f2 == 0.0 || f4 == 0.0 || f1.signum() != f2.signum() || f2.signum() != f4.signum() {
        return Ok(crude);
    }
    let p1 = (f1 / f2).log2();
    let p2 = (f2 / f4).log2();
    if !(p1 > -0.99 && p2 > -0.99) {
        return Ok(crude);
    }
    let v1 = eps * f1 / (1.0 + p1);
    let v2 = 0.5 * eps * f2 / (1.0 + p2);
    // v2 is the integral over [0, ε/2]; compare both on the common interval
    let v2_full = v2 * 2f64.powf(1.0 + p2);
    Ok((v1, (v1 - v2_full).abs() + 1e-3 * v1.abs()))
}

/// Sums of separately converged pieces may carry a few times the per-piece target.
fn accuracy_check(est: Estimate, cfg: &QuadratureConfig, context: impl FnOnce() -> String) -> Result<Estimate> {
    if est.error > 10.0 * cfg.tolerance().target(est.value.abs()) {
        return Err(Error::accuracy(est.value, est.error, context()));
    }
    Ok(est)
}

struct FreeSymbol<'a> {
    exp: &'a LevyExponent,
    t: f64,
    cut: f64,
}

impl CosineSymbol for FreeSymbol<'_> {
    fn eval(&self, xi: f64) -> f64 {
        (-self.t * self.exp.psi(xi)).exp()
    }
    fn scale(&self) -> f64 {
        self.cut
    }
    fn tail_exponent(&self) -> f64 {
        2.0
    }
    fn cutoff(&self) -> Option<f64> {
        Some(self.cut)
    }
}

/// p_t(x) = (1/π) ∫₀^∞ e^{−tΨ(ξ)} cos(ξx) dξ.
pub fn free_density(exp: &LevyExponent, t: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(free_density_estimate(exp, t, x, cfg)?.value)
}

pub fn free_density_estimate(exp: &LevyExponent, t: f64, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_time(t)?;
    let symbol = FreeSymbol {
        exp,
        t,
        cut: truncation_radius(exp, t, DENSITY_CUTOFF),
    };
    let est = cosine_transform_at(&symbol, x, cfg)?;
    if est.value < -(cfg.abs_tol + est.error) {
        return Err(Error::Positivity {
            value: est.value,
            context: format!("free density at t = {t}, x = {x}"),
        });
    }
    Ok(est)
}

/// `Some(reason)` when the exponent is not known to satisfy the concavity
/// hypothesis behind the killed-density and hitting-time formulas.
pub fn advisory(exp: &LevyExponent) -> Option<String> {
    if exp.known_concave_half() {
        None
    } else {
        Some(format!("{exp}: ξΨ''(ξ) ≤ Ψ'(ξ) fails, the result is not covered by the theory"))
    }
}

/// p_t^{R∖0}(x, y) = (p_t(x−y) − p_t(x+y))/2 + (1/π) ∫₀^∞ e^{−tΨ(λ)} F_λ(x) F_λ(y) dλ.
pub fn killed_density(exp: &LevyExponent, t: f64, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(killed_density_estimate(exp, t, x, y, cfg)?.value)
}

pub fn killed_density_estimate(
    exp: &LevyExponent,
    t: f64,
    x: f64,
    y: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    check_time(t)?;
    if x == 0.0 || y == 0.0 {
        // started at, or evaluated at, the cemetery point
        return Ok(Estimate::zero());
    }
    let free = free_density_estimate(exp, t, x - y, cfg)? + free_density_estimate(exp, t, x + y, cfg)?.scale(-1.0);
    let integrand = |l: f64| -> Result<f64> {
        let damp = (-t * exp.psi(l)).exp();
        if damp == 0.0 {
            return Ok(0.0);
        }
        let e = compute_eigendata(exp, l, cfg)?;
        Ok(damp * f_value(exp, &e, x, cfg)?.value * f_value(exp, &e, y, cfg)?.value)
    };
    let h = (4.0 / (x.abs() + y.abs())).min(2.0);
    let spectral = spectral_integral(&integrand, spectral_radius(exp, t, cfg), h, cfg.tolerance(), cfg)?;
    let total = free.scale(0.5) + spectral.scale(1.0 / PI);
    accuracy_check(total, cfg, || format!("killed density at t = {t}, x = {x}, y = {y}"))
}

/// Killed and free densities on a product grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelGrid {
    pub t: f64,
    pub x_grid: RealGrid,
    pub y_grid: RealGrid,
    /// values[i][j] = p_t^{R∖0}(x_i, y_j).
    pub values: Vec<Vec<f64>>,
    /// free_values[i][j] = p_t(x_i − y_j).
    pub free_values: Vec<Vec<f64>>,
    /// Estimated bound on the error of any entry of `values`.
    pub error: f64,
}

impl KernelGrid {
    /// Largest violation of 0 ≤ p^{R∖0} ≤ p.
    pub fn domination_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (row, free) in self.values.iter().zip(&self.free_values) {
            for (v, p) in row.iter().zip(free) {
                worst = worst.max(-v).max(v - p);
            }
        }
        // never −0
        if worst > 0.0 {
            worst
        } else {
            0.0
        }
    }
}

/// Panels of a fixed λ-rule: geometric towards 0, then width `h` up to Λ.
fn lambda_panels(h: f64, lambda_max: f64) -> Vec<(f64, f64)> {
    let n = (lambda_max / h).ceil().max(1.0) as usize;
    let mut panels: Vec<(f64, f64)> = (0..GRADE).map(|j| (h * 0.5f64.powi(j + 1), h * 0.5f64.powi(j))).collect();
    panels.extend((1..n).map(|k| (k as f64 * h, (k + 1) as f64 * h)));
    panels
}

/// Per-node data of a fixed λ-rule: Kronrod and Gauss weights (times e^{−tΨ}/π),
/// and sin(λ|p|), cos(λ|p|), F_λ(|p|) for every point p.
pub(crate) struct LambdaRule {
    pub(crate) points: Vec<f64>,
    pub(crate) nodes: Vec<RuleNode>,
}

pub(crate) struct RuleNode {
    pub(crate) wk: f64,
    pub(crate) wg: f64,
    pub(crate) sin: Vec<f64>,
    pub(crate) cos: Vec<f64>,
    pub(crate) f: Vec<f64>,
    pub(crate) f_err: f64,
}

impl LambdaRule {
    /// `points` must be sorted, nonnegative and free of duplicates.
    pub(crate) fn new(exp: &LevyExponent, t: f64, points: Vec<f64>, cfg: &QuadratureConfig) -> Result<Self> {
        let reach = points.last().copied().unwrap_or(0.0);
        let h = (8.0 / (2.0 * reach).max(1e-300)).min(1.0);
        let panels = lambda_panels(h, spectral_radius(exp, t, cfg));
        let raw: Vec<(f64, f64, f64)> = panels.iter().flat_map(|&(a, b)| kronrod_nodes(a, b)).collect();
        let nodes = raw
            .par_iter()
            .map(|&(l, wk, wg)| {
                let damp = (-t * exp.psi(l)).exp() / PI;
                if damp == 0.0 {
                    return Ok(None);
                }
                let e = compute_eigendata(exp, l, cfg)?;
                let (f, f_err) = f_values_fast(exp, &e, &points, cfg)?;
                Ok(Some(RuleNode {
                    wk: wk * damp,
                    wg: wg * damp,
                    sin: points.iter().map(|p| (l * p).sin()).collect(),
                    cos: points.iter().map(|p| (l * p).cos()).collect(),
                    f,
                    f_err,
                }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(Self { points, nodes })
    }

    pub(crate) fn index(&self, v: f64) -> usize {
        self.points
            .binary_search_by(|p| p.total_cmp(&v.abs()))
            .expect("point registered with the rule")
    }

    /// (killed, free, error estimate) at (x, y).
    pub(crate) fn cell(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (i, j) = (self.index(x), self.index(y));
        let sign = if (x < 0.0) != (y < 0.0) { -1.0 } else { 1.0 };
        let (mut k, mut g, mut free) = (0.0, 0.0, 0.0);
        for n in &self.nodes {
            let ss = sign * n.sin[i] * n.sin[j];
            let v = ss + n.f[i] * n.f[j];
            k += n.wk * v;
            g += n.wg * v;
            free += n.wk * (n.cos[i] * n.cos[j] + ss);
        }
        (k, free, (k - g).abs())
    }

    /// x ↦ ∫ p_t^{R∖0}(x, y) g(y) dy for g given as weighted samples `(y, w·g(y))`.
    pub(crate) fn apply<'a>(&'a self, samples: &[(f64, f64)]) -> impl Fn(f64) -> f64 + Sync + 'a {
        let sums: Vec<(f64, f64)> = self
            .nodes
            .iter()
            .map(|n| {
                samples.iter().fold((0.0, 0.0), |(s, f), &(y, wg)| {
                    let j = self.index(y);
                    (s + wg * y.signum() * n.sin[j], f + wg * n.f[j])
                })
            })
            .collect();
        move |x: f64| {
            let i = self.index(x);
            self.nodes
                .iter()
                .zip(&sums)
                .map(|(n, (s, f))| n.wk * (x.signum() * n.sin[i] * s + n.f[i] * f))
                .sum()
        }
    }

    /// Bound on the contribution of the G-value errors to any cell.
    pub(crate) fn g_error(&self) -> f64 {
        self.nodes.iter().map(|n| 2.0 * n.wk.abs() * n.f_err).sum()
    }
}

/// p_t^{R∖0} on `x_grid × y_grid` with one fixed λ-rule shared by every cell.
///
/// Both parts come from the rule: ½(p_t(x−y) − p_t(x+y)) = (1/π) ∫ e^{−tΨ} sin λx sin λy dλ.
pub fn killed_kernel_grid(
    exp: &LevyExponent,
    t: f64,
    x_grid: &RealGrid,
    y_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<KernelGrid> {
    check_time(t)?;
    let xs = x_grid.points();
    let ys = y_grid.points();
    let mut pts: Vec<f64> = xs.iter().chain(ys).map(|v| v.abs()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let rule = LambdaRule::new(exp, t, pts, cfg)?;
    let cells: Vec<Vec<(f64, f64, f64)>> = xs
        .par_iter()
        .map(|&x| ys.iter().map(|&y| rule.cell(x, y)).collect())
        .collect();
    let worst = cells.iter().flatten().fold(0.0f64, |m, c| m.max(c.2));
    Ok(KernelGrid {
        t,
        x_grid: x_grid.clone(),
        y_grid: y_grid.clone(),
        values: cells.iter().map(|r| r.iter().map(|c| c.0).collect()).collect(),
        free_values: cells.iter().map(|r| r.iter().map(|c| c.1).collect()).collect(),
        error: worst + rule.g_error() + cfg.abs_tol,
    })
}

/// P_x(t < τ₀ < ∞) = (1/π) ∫₀^∞ cos ϑ_λ e^{−tΨ(λ)} Ψ'(λ)/Ψ(λ) F_λ(x) dλ,
/// integrated as a bounded oscillatory part and a sign-definite correction:
/// F_λ(x) = (sin(λ|x| + ϑ_λ) − sin ϑ_λ) + (G_λ(0) − G_λ(x)), G_λ(0) = sin ϑ_λ.
pub fn hitting_tail(exp: &LevyExponent, t: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(hitting_tail_estimate(exp, t, x, cfg)?.value)
}

pub fn hitting_tail_estimate(exp: &LevyExponent, t: f64, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_time(t)?;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("hitting time needs a finite start x ≠ 0, got {x}")));
    }
    let ax = x.abs();
    let weight = |l: f64| -> Result<(f64, EigenData)> {
        let damp = (-t * exp.psi(l)).exp();
        let e = compute_eigendata(exp, l, cfg)?;
        Ok((e.cos_theta * damp * exp.psi_prime(l) / exp.psi(l), e))
    };
    let sine = |l: f64| -> Result<f64> {
        let (w, e) = weight(l)?;
        if w == 0.0 {
            return Ok(0.0);
        }
        // sin(a + θ) − sin θ without cancellation for small a
        let a = l * ax;
        Ok(w * (2.0 * (0.5 * a).sin() * (0.5 * a + e.theta).cos()))
    };
    let correction = |l: f64| -> Result<f64> {
        let (w, e) = weight(l)?;
        if w == 0.0 {
            return Ok(0.0);
        }
        let g = crate::eigenfunctions::g_value(exp, &e, ax, cfg)?;
        Ok(w * (e.sin_theta - g.value))
    };
    let lambda_max = spectral_radius(exp, t, cfg);
    let h = (4.0 / ax).min(2.0);
    let tol = cfg.tolerance().split(2);
    let mut total = spectral_integral(&sine, lambda_max, h, tol, cfg)?;
    if !exp.is_brownian() {
        total = total + spectral_integral(&correction, lambda_max, h, tol, cfg)?;
    }
    let total = accuracy_check(total.scale(1.0 / PI), cfg, || format!("hitting tail at t = {t}, x = {x}"))?;
    let slack = total.error + cfg.abs_tol.max(1e-9);
    if total.value < -slack || total.value > 1.0 + slack {
        return Err(Error::accuracy(
            total.value,
            total.error,
            format!("hitting tail at t = {t}, x = {x} is outside [0, 1]"),
        ));
    }
    Ok(Estimate {
        value: total.value.clamp(0.0, 1.0),
        ..total
    })
}

/// P_x(τ₀ < ∞) as lim_{z→0⁺} E_x e^{−zτ₀}, by Aitken extrapolation over z = 1e-4, 1e-5, 1e-6;
/// the spread against the sequence shifted to 1e-7 is the error estimate.
pub fn hitting_prob_finite(exp: &LevyExponent, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(hitting_prob_finite_estimate(exp, x, cfg)?.value)
}

pub fn hitting_prob_finite_estimate(exp: &LevyExponent, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("hitting probability needs a finite start x ≠ 0, got {x}")));
    }
    let set = ResolventSet::new(exp.clone(), *cfg)?;
    let zs = [1e-4, 1e-5, 1e-6, 1e-7];
    let v: Vec<f64> = zs.iter().map(|&z| set.laplace_hitting(z, x)).collect::<Result<_>>()?;
    let a = aitken(v[0], v[1], v[2]);
    let b = aitken(v[1], v[2], v[3]);
    let err = (a - b).abs();
    if err > 1e-3 || !a.is_finite() {
        return Err(Error::accuracy(a, err, format!("z → 0 extrapolation at x = {x} did not settle")));
    }
    Ok(Estimate {
        value: a.clamp(0.0, 1.0),
        error: err,
        evaluations: 0,
    })
}

/// Limit of a geometrically converging sequence; falls back to the last term when the differences vanish.
fn aitken(a: f64, b: f64, c: f64) -> f64 {
    let d = (c - b) - (b - a);
    if d.abs() <= 1e-14 * c.abs().max(1e-300) || (c - b).abs() < 1e-15 {
        return c;
    }
    c - (c - b) * (c - b) / d
}

struct ResolventSymbol<'a> {
    exp: &'a LevyExponent,
    z: f64,
    knee: f64,
}

impl CosineSymbol for ResolventSymbol<'_> {
    fn eval(&self, xi: f64) -> f64 {
        1.0 / (self.z + self.exp.psi(xi))
    }
    fn scale(&self) -> f64 {
        self.knee.max(1.0).max(self.exp.crossover())
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.knee]
    }
    fn tail_exponent(&self) -> f64 {
        self.exp.growth_exponent()
    }
    fn tail_gap(&self) -> f64 {
        inverse_gap(self.exp)
    }
}

/// Gap of the expansion of 1/(z + Ψ) beyond its leading power.
fn inverse_gap(exp: &LevyExponent) -> f64 {
    exp.growth_gap().min(exp.growth_exponent()).min(2.0)
}

/// Evaluators for the resolvent density and the Stieltjes functions built on Ψ.
#[derive(Debug, Clone)]
pub struct ResolventSet {
    pub exp: LevyExponent,
    pub cfg: QuadratureConfig,
}

static K_WEIGHTED: Memo<(LambdaKey, u64), Estimate> = Memo::new();

impl ResolventSet {
    pub fn new(exp: LevyExponent, cfg: QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { exp, cfg })
    }

    /// (1/π) ∫₀^∞ w(ζ)/(Ψ(ζ) + z) dζ for real z > 0; w decays like ζ^{−decay}.
    fn stieltjes(&self, w: &(dyn Fn(f64) -> f64 + Sync), decay: f64, z: f64, scales: &[f64]) -> Result<Estimate> {
        check_z(z)?;
        let knee = self.exp.psi_inverse(z);
        let f = |s: f64| w(s) / (self.exp.psi(s) + z);
        let scale = scales.iter().copied().fold(knee.max(self.exp.crossover()).max(1e-300), f64::max);
        let spec = Improper::new(
            scale,
            Tail::power(self.exp.growth_exponent() + decay, inverse_gap(&self.exp)),
        )
        .breaks(std::iter::once(knee).chain(scales.iter().copied()));
        Ok(improper_integral(&f, &spec, &self.cfg)?.scale(1.0 / PI))
    }

    /// φ(z) = (1/π) ∫₀^∞ dζ/(Ψ(ζ) + z).
    pub fn phi(&self, z: f64) -> Result<Estimate> {
        self.stieltjes(&|_| 1.0, 0.0, z, &[])
    }

    /// φ(ξ, z) = (1/π) ∫₀^∞ ξ²/(ξ²+ζ²) dζ/(Ψ(ζ) + z).
    pub fn phi_xi(&self, xi: f64, z: f64) -> Result<Estimate> {
        check_xi(xi)?;
        self.stieltjes(&|s| l_weight(s, xi), 2.0, z, &[xi])
    }

    /// φ(ξ₁, ξ₂, z) with both Lorentz weights.
    pub fn phi_two(&self, xi1: f64, xi2: f64, z: f64) -> Result<Estimate> {
        check_xi(xi1)?;
        check_xi(xi2)?;
        self.stieltjes(&|s| l_weight(s, xi1) * l_weight(s, xi2), 4.0, z, &[xi1, xi2])
    }

    /// φ̃(ξ₁, ξ₂, z) = φ(ξ₁, ξ₂, z) − φ(ξ₁, z)φ(ξ₂, z)/φ(z).
    pub fn phi_tilde(&self, xi1: f64, xi2: f64, z: f64) -> Result<Estimate> {
        let p = self.phi(z)?;
        let a = self.phi_xi(xi1, z)?;
        let b = self.phi_xi(xi2, z)?;
        let c = self.phi_two(xi1, xi2, z)?;
        let q = a.value * b.value / p.value;
        Ok(Estimate {
            value: c.value - q,
            error: c.error + q * (a.error / a.value + b.error / b.value + p.error / p.value),
            evaluations: p.evaluations + a.evaluations + b.evaluations + c.evaluations,
        })
    }

    fn stieltjes_complex(&self, w: &(dyn Fn(f64) -> f64 + Sync), decay: f64, z: Complex64) -> Result<Estimate<Complex64>> {
        if !(z.im >= 0.0) || (z.im == 0.0 && z.re <= 0.0) {
            return Err(Error::domain(format!("z = {z} must lie off the negative half-line, Im z ≥ 0")));
        }
        let mut bps = Vec::new();
        let mut scale = self.exp.crossover().max(z.norm().powf(1.0 / self.exp.growth_exponent())).max(1e-300);
        if z.re < 0.0 {
            // pole of the integrand close to the real ζ-axis at Ψ(λ₀) = −Re z
            let l0 = self.exp.psi_inverse(-z.re);
            let width = z.im / self.exp.psi_prime(l0).max(1e-300);
            bps.push(l0);
            for k in [1.0, 10.0, 100.0, 1000.0] {
                bps.push(l0 - k * width);
                bps.push(l0 + k * width);
            }
            scale = scale.max(l0);
        }
        let f = |s: f64| Complex64::new(w(s), 0.0) / (self.exp.psi(s) + z);
        let spec = Improper::new(scale, Tail::power(self.exp.growth_exponent() + decay, inverse_gap(&self.exp)))
            .breaks(bps.into_iter().filter(|b| *b > 0.0));
        Ok(improper_integral(&f, &spec, &self.cfg)?.scale(1.0 / PI))
    }

    /// φ(z) for complex z in the closed upper half-plane minus (−∞, 0].
    pub fn phi_complex(&self, z: Complex64) -> Result<Estimate<Complex64>> {
        self.stieltjes_complex(&|_| 1.0, 0.0, z)
    }

    pub fn phi_xi_complex(&self, xi: f64, z: Complex64) -> Result<Estimate<Complex64>> {
        check_xi(xi)?;
        self.stieltjes_complex(&|s| l_weight(s, xi), 2.0, z)
    }

    /// u_z(x) = (1/π) ∫₀^∞ cos(ξx)/(z + Ψ(ξ)) dξ.
    pub fn resolvent_u(&self, z: f64, x: f64) -> Result<Estimate> {
        check_z(z)?;
        let symbol = ResolventSymbol {
            exp: &self.exp,
            z,
            knee: self.exp.psi_inverse(z),
        };
        cosine_transform_at(&symbol, x, &self.cfg)
    }

    /// E_x e^{−zτ₀} = u_z(x)/u_z(0), formed as 1 − (u_z(0) − u_z(x))/u_z(0).
    pub fn laplace_hitting(&self, z: f64, x: f64) -> Result<f64> {
        check_z(z)?;
        if x == 0.0 {
            return Ok(1.0);
        }
        let symbol = ResolventSymbol {
            exp: &self.exp,
            z,
            knee: self.exp.psi_inverse(z),
        };
        let d = one_minus_cosine_transform_at(&symbol, x, &self.cfg)?;
        let u0 = self.phi(z)?;
        Ok((1.0 - d.value / u0.value).clamp(0.0, 1.0))
    }

    pub fn eigendata(&self, lambda: f64) -> Result<EigenData> {
        compute_eigendata(&self.exp, lambda, &self.cfg)
    }

    /// K_λ(ξ), cached per (family, config, λ, ξ).
    pub fn k_xi(&self, lambda: f64, xi: f64) -> Result<Estimate> {
        check_xi(xi)?;
        let run = || k_weighted(&self.exp, lambda, xi, &self.cfg);
        match lambda_key(&self.exp, &self.cfg, lambda) {
            Some(key) => K_WEIGHTED.get_or_try((key, xi.to_bits()), run),
            None => run(),
        }
    }

    /// L_λ(ξ) = ξ²/(ξ² + λ²).
    pub fn l_xi(&self, lambda: f64, xi: f64) -> f64 {
        l_weight(lambda, xi)
    }

    /// (φ⁺(−Ψ(λ)), φ⁺(ξ, −Ψ(λ))): boundary values from the upper half-plane,
    /// (K_λ − i)/Ψ'(λ) and (K_λ(ξ) − iL_λ(ξ))/Ψ'(λ).
    pub fn phi_plus_boundary(&self, lambda: f64, xi: f64) -> Result<(Complex64, Complex64)> {
        let d = self.exp.psi_prime_checked(lambda)?;
        if !(d > 0.0) {
            return Err(Error::domain(format!("Ψ'(λ) = {d} is not positive at λ = {lambda}")));
        }
        let e = self.eigendata(lambda)?;
        let kx = self.k_xi(lambda, xi)?;
        Ok((
            Complex64::new(e.k, -1.0) / d,
            Complex64::new(kx.value, -self.l_xi(lambda, xi)) / d,
        ))
    }

    /// (K_λ L_λ(ξ) − K_λ(ξ))/√(1 + K_λ²).
    fn key_factor(&self, lambda: f64, xi: f64) -> Result<(f64, f64)> {
        let e = self.eigendata(lambda)?;
        let kx = self.k_xi(lambda, xi)?;
        Ok((
            (e.k * self.l_xi(lambda, xi) - kx.value) * e.cos_theta,
            (e.k_error + kx.error) * e.cos_theta,
        ))
    }

    /// Φ(ξ₁, ξ₂, t) = ∫₀^∞ A_λ(ξ₁) A_λ(ξ₂) e^{−tΨ(λ)} dλ, A_λ(ξ) = (K_λL_λ(ξ) − K_λ(ξ))/√(1+K_λ²).
    pub fn capital_phi(&self, xi1: f64, xi2: f64, t: f64) -> Result<Estimate> {
        check_xi(xi1)?;
        check_xi(xi2)?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("capital_phi needs t ≥ 0, got {t}")));
        }
        let trap = Trap::new();
        let f = |l: f64| {
            trap.catch((|| {
                let damp = if t > 0.0 { (-t * self.exp.psi(l)).exp() } else { 1.0 };
                if damp == 0.0 {
                    return Ok(0.0);
                }
                let (a, _) = self.key_factor(l, xi1)?;
                let (b, _) = if xi2 == xi1 { (a, 0.0) } else { self.key_factor(l, xi2)? };
                Ok(a * b * damp)
            })())
        };
        let scale = xi1.max(xi2);
        let tail = if t > 0.0 {
            Tail::Vanishing
        } else {
            Tail::power(2.0, self.exp.growth_gap().min(1.0))
        };
        let mut spec = Improper::new(scale, tail).breaks([xi1.min(xi2), scale]);
        spec = if t > 0.0 {
            spec.radius(spectral_radius(&self.exp, t, &self.cfg).max(2.0 * scale))
        } else {
            // the per-λ factors are small differences; keep the fit where they are well above the noise
            spec.radius(1e3 * scale.max(self.exp.crossover()))
        };
        let r = improper_integral(&f, &spec, &self.cfg);
        trap.finish(r)
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("ξ must be positive and finite, got {xi}")))
    }
}

/// u_z(x) for a single exponent.
pub fn resolvent_u(exp: &LevyExponent, z: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(ResolventSet::new(exp.clone(), *cfg)?.resolvent_u(z, x)?.value)
}

/// E_x e^{−zτ₀}.
pub fn laplace_hitting(exp: &LevyExponent, z: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    ResolventSet::new(exp.clone(), *cfg)?.laplace_hitting(z, x)
}

pub fn phi(set: &ResolventSet, z: f64) -> Result<f64> {
    Ok(set.phi(z)?.value)
}

pub fn phi_xi(set: &ResolventSet, xi: f64, z: f64) -> Result<f64> {
    Ok(set.phi_xi(xi, z)?.value)
}

pub fn phi_two(set: &ResolventSet, xi1: f64, xi2: f64, z: f64) -> Result<f64> {
    Ok(set.phi_two(xi1, xi2, z)?.value)
}

pub fn phi_tilde(set: &ResolventSet, xi1: f64, xi2: f64, z: f64) -> Result<f64> {
    Ok(set.phi_tilde(xi1, xi2, z)?.value)
}

pub fn phi_plus_boundary(set: &ResolventSet, lambda: f64, xi: f64) -> Result<(Complex64, Complex64)> {
    set.phi_plus_boundary(lambda, xi)
}

pub fn capital_phi(set: &ResolventSet, xi1: f64, xi2: f64, t: f64) -> Result<f64> {
    Ok(set.capital_phi(xi1, xi2, t)?.value)
}
