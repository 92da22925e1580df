//! Phase shifts ϑ_λ, the correction terms G_λ and the eigenfunctions
//! F_λ(x) = sin(λ|x| + ϑ_λ) − G_λ(x).

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::cache::{lambda_key, LambdaKey, Memo};
use crate::error::{Error, Result};
use crate::exponents::LevyExponent;
use crate::grid::{GridFunction, RealGrid};
use crate::quadrature::{
    cosine_transform_at, improper_integral, kronrod_nodes, pv_psi_integral, CosineSymbol, Estimate, Improper,
    Lorentz, QuadratureConfig, Tail, Unit,
};

/// Per-λ constants: K_λ and the phase ϑ_λ = arctan K_λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda: f64,
    pub k: f64,
    pub theta: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
    /// Error bound on `k`.
    pub k_error: f64,
}

impl EigenData {
    pub fn from_k(lambda: f64, k: f64, k_error: f64) -> Self {
        let r = k.hypot(1.0);
        Self {
            lambda,
            k,
            theta: k.atan(),
            cos_theta: 1.0 / r,
            sin_theta: k / r,
            k_error,
        }
    }

    /// Error bound on sin ϑ implied by `k_error`.
    pub fn sin_error(&self) -> f64 {
        self.k_error * self.cos_theta.powi(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GMethod {
    FourierInversion,
    LaplaceRoute,
}

impl GMethod {
    pub fn preferred(exp: &LevyExponent) -> Self {
        if exp.supports_holomorphic() {
            GMethod::LaplaceRoute
        } else {
            GMethod::FourierInversion
        }
    }
}

/// F_λ and G_λ sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionProfile {
    pub eigen: EigenData,
    pub x_grid: RealGrid,
    pub g_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub method: GMethod,
    pub error_estimate: f64,
}

impl EigenfunctionProfile {
    /// sin(λ|x| + ϑ_λ) on the grid.
    pub fn sine_envelope(&self) -> Vec<f64> {
        self.x_grid
            .iter()
            .map(|x| (self.eigen.lambda * x.abs() + self.eigen.theta).sin())
            .collect()
    }
}

static EIGEN: Memo<LambdaKey, EigenData> = Memo::new();
static G_VALUES: Memo<(LambdaKey, u64), Estimate> = Memo::new();

/// K_λ = −(1/π) PV ∫₀^∞ Ψ'(λ)/(Ψ(λ) − Ψ(ξ)) dξ and the derived phase. Cached per (family, config, λ).
pub fn compute_eigendata(exp: &LevyExponent, lambda: f64, cfg: &QuadratureConfig) -> Result<EigenData> {
    let run = || {
        exp.require_standing_hypotheses()?;
        let pv = pv_psi_integral(exp, lambda, &Unit, cfg)?;
        Ok(EigenData::from_k(lambda, -pv.value, pv.error))
    };
    match lambda_key(exp, cfg, lambda) {
        Some(key) => EIGEN.get_or_try(key, run),
        None => run(),
    }
}

/// K_λ(ξ) = −(1/π) PV ∫₀^∞ ξ²/(ξ²+ζ²) Ψ'(λ)/(Ψ(λ) − Ψ(ζ)) dζ.
pub fn k_weighted(exp: &LevyExponent, lambda: f64, xi: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let pv = pv_psi_integral(exp, lambda, &Lorentz(xi), cfg)?;
    Ok(pv.scale(-1.0))
}

/// L_λ(ξ) = ξ²/(ξ² + λ²).
pub fn l_weight(lambda: f64, xi: f64) -> f64 {
    xi * xi / (xi * xi + lambda * lambda)
}

/// Fourier transform of G_λ, blended to its Taylor limit near ξ = λ.
pub struct GSymbol<'a> {
    exp: &'a LevyExponent,
    eigen: EigenData,
    window: f64,
    psi_l: f64,
    dpsi_l: f64,
    limit: f64,
}

impl<'a> GSymbol<'a> {
    pub fn new(exp: &'a LevyExponent, eigen: EigenData, window: f64) -> Self {
        let l = eigen.lambda;
        let dpsi_l = exp.psi_prime(l);
        let limit = eigen.cos_theta * (0.5 / l - 0.5 * exp.psi_second(l) / dpsi_l);
        Self {
            exp,
            eigen,
            window,
            psi_l: exp.psi(l),
            dpsi_l,
            limit,
        }
    }

    fn direct(&self, xi: f64) -> f64 {
        let l = self.eigen.lambda;
        self.eigen.cos_theta * (2.0 * l / (l * l - xi * xi) - self.dpsi_l / (self.psi_l - self.exp.psi(xi)))
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let xi = xi.abs();
        let l = self.eigen.lambda;
        let w = self.window * l;
        let d = xi - l;
        if d.abs() >= w {
            return self.direct(xi);
        }
        let edge = if d < 0.0 { l - w } else { l + w };
        self.limit + (self.direct(edge) - self.limit) * d.abs() / w
    }

    /// True when the symbol is below `tol` everywhere on a wide sample (Brownian case).
    pub fn negligible(&self, tol: f64) -> bool {
        let l = self.eigen.lambda;
        self.limit.abs() < tol
            && (0..=240).all(|i| {
                let xi = l * 10f64.powf(-6.0 + 12.0 * i as f64 / 240.0);
                self.eval(xi).abs() < tol
            })
    }
}

impl CosineSymbol for GSymbol<'_> {
    fn eval(&self, xi: f64) -> f64 {
        GSymbol::eval(self, xi)
    }
    fn scale(&self) -> f64 {
        self.eigen.lambda.max(1.0).max(self.exp.crossover())
    }
    fn breakpoints(&self) -> Vec<f64> {
        let l = self.eigen.lambda;
        vec![l * (1.0 - self.window), l, l * (1.0 + self.window)]
    }
    fn tail_exponent(&self) -> f64 {
        self.exp.growth_exponent()
    }
    fn tail_gap(&self) -> f64 {
        self.exp.growth_gap().min(2.0)
    }
    fn known(&self, xi: f64) -> f64 {
        let l = self.eigen.lambda;
        self.eigen.cos_theta * 2.0 * l / (l * l - xi * xi)
    }
    fn known_tail(&self, r: f64) -> f64 {
        -self.eigen.cos_theta * 2.0 * (self.eigen.lambda / r).atanh()
    }
}

/// Value of the G_λ symbol with the default Taylor window.
pub fn g_symbol(exp: &LevyExponent, eigen: &EigenData, xi: f64) -> f64 {
    GSymbol::new(exp, *eigen, QuadratureConfig::default().singularity_window).eval(xi)
}

fn symbol_for<'a>(exp: &'a LevyExponent, eigen: &EigenData, cfg: &QuadratureConfig) -> GSymbol<'a> {
    GSymbol::new(exp, *eigen, cfg.singularity_window)
}

/// G_λ(x) by numerical inversion of its Fourier transform.
pub fn g_fourier_at(exp: &LevyExponent, eigen: &EigenData, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let symbol = symbol_for(exp, eigen, cfg);
    if symbol.negligible(cfg.abs_tol) {
        return Ok(Estimate::zero());
    }
    cosine_transform_at(&symbol, x, cfg)
}

/// Im 1/(Ψ(λ) − Ψ⁺(iξ)).
fn laplace_density(exp: &LevyExponent, psi_l: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return 0.0;
    }
    let p = exp.psi_plus_imag_axis(xi).expect("holomorphic family");
    p.im / (psi_l - p).norm_sqr()
}

fn require_holomorphic(exp: &LevyExponent) -> Result<()> {
    if exp.supports_holomorphic() {
        Ok(())
    } else {
        Err(Error::Capability {
            family: exp.to_string(),
            what: "the Laplace-route representation of G_λ",
        })
    }
}

/// Samples the Laplace-route density and rejects negative values or zeros of Ψ(λ) − Ψ⁺(iξ).
fn check_laplace_density(exp: &LevyExponent, lambda: f64, cfg: &QuadratureConfig) -> Result<()> {
    let psi_l = exp.psi(lambda);
    for i in 0..=120 {
        let xi = lambda * 10f64.powf(-6.0 + 12.0 * i as f64 / 120.0);
        let p = exp.psi_plus_imag_axis(xi)?;
        let rho = laplace_density(exp, psi_l, xi);
        if (psi_l - p).norm() == 0.0 || !rho.is_finite() {
            return Err(Error::Assumption(format!("Ψ⁺(iξ) = Ψ(λ) at ξ = {xi}, λ = {lambda}")));
        }
        if rho < -cfg.abs_tol {
            return Err(Error::Positivity {
                value: rho,
                context: format!("Laplace-route density at ξ = {xi}, λ = {lambda} (branch of Ψ⁺)"),
            });
        }
    }
    Ok(())
}

/// G_λ(x) = (Ψ'(λ) cos ϑ_λ/π) ∫₀^∞ Im 1/(Ψ(λ) − Ψ⁺(iξ)) e^{−ξ|x|} dξ.
pub fn g_laplace_at(exp: &LevyExponent, eigen: &EigenData, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    require_holomorphic(exp)?;
    let lambda = eigen.lambda;
    let psi_l = exp.psi(lambda);
    let ax = x.abs();
    let f = |xi: f64| laplace_density(exp, psi_l, xi) * (-xi * ax).exp();
    let bps = exp.imag_axis_breakpoints();
    let scale = bps.iter().copied().fold(lambda.max(exp.crossover()), f64::max);
    let (q, gap) = exp.laplace_density_tail();
    let mut spec = Improper::new(scale, if ax > 0.0 { Tail::Vanishing } else { Tail::power(q, gap) })
        .breaks(std::iter::once(lambda).chain(bps));
    if ax > 0.0 {
        spec = spec.radius(50.0 / ax);
    }
    let r = improper_integral(&f, &spec, cfg)?;
    Ok(r.scale(exp.psi_prime(lambda) * eigen.cos_theta / PI))
}

/// G_λ(|x|) through the preferred route, cached per (family, config, λ, |x|).
pub fn g_value(exp: &LevyExponent, eigen: &EigenData, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let ax = x.abs();
    let run = || match GMethod::preferred(exp) {
        GMethod::LaplaceRoute => {
            if exp.is_brownian() {
                return Ok(Estimate::zero());
            }
            g_laplace_at(exp, eigen, ax, cfg)
        }
        GMethod::FourierInversion => g_fourier_at(exp, eigen, ax, cfg),
    };
    match lambda_key(exp, cfg, eigen.lambda) {
        Some(key) => G_VALUES.get_or_try((key, ax.to_bits()), run),
        None => run(),
    }
}

fn collect(grid: &RealGrid, f: impl Fn(f64) -> Result<Estimate> + Sync) -> Result<GridFunction> {
    let est: Vec<Estimate> = grid.points().par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    Ok(GridFunction::new(
        grid.clone(),
        est.iter().map(|e| e.value).collect(),
        est.iter().map(|e| e.error).collect(),
    ))
}

/// G_λ on a grid by Fourier inversion of its symbol.
#[allow(non_snake_case)]
pub fn eval_G(exp: &LevyExponent, eigen: &EigenData, x_grid: &RealGrid, cfg: &QuadratureConfig) -> Result<GridFunction> {
    let symbol = symbol_for(exp, eigen, cfg);
    if symbol.negligible(cfg.abs_tol) {
        return Ok(GridFunction::from_fn(x_grid.clone(), |_| 0.0));
    }
    collect(x_grid, |x| cosine_transform_at(&symbol, x, cfg))
}

/// G_λ on a grid through the completely monotone (Laplace) representation.
#[allow(non_snake_case)]
pub fn eval_G_laplace(
    exp: &LevyExponent,
    eigen: &EigenData,
    x_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<GridFunction> {
    require_holomorphic(exp)?;
    if symbol_for(exp, eigen, cfg).negligible(cfg.abs_tol) {
        return Ok(GridFunction::from_fn(x_grid.clone(), |_| 0.0));
    }
    check_laplace_density(exp, eigen.lambda, cfg)?;
    collect(x_grid, |x| g_laplace_at(exp, eigen, x, cfg))
}

/// F_λ = sin(λ|x| + ϑ_λ) − G_λ on a grid, G by the preferred route.
#[allow(non_snake_case)]
pub fn eval_F(
    exp: &LevyExponent,
    eigen: &EigenData,
    x_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<EigenfunctionProfile> {
    let method = GMethod::preferred(exp);
    let g = match method {
        GMethod::LaplaceRoute => eval_G_laplace(exp, eigen, x_grid, cfg)?,
        GMethod::FourierInversion => eval_G(exp, eigen, x_grid, cfg)?,
    };
    let f_values: Vec<f64> = g
        .iter()
        .map(|(x, gv)| (eigen.lambda * x.abs() + eigen.theta).sin() - gv)
        .collect();
    let error_estimate = g.max_error() + eigen.sin_error();
    for ((x, fv), e) in x_grid.iter().zip(&f_values).zip(&g.errors) {
        if x == 0.0 {
            let bound = 10.0 * (e + eigen.sin_error()).max(cfg.abs_tol);
            if fv.abs() > bound {
                return Err(Error::accuracy(*fv, bound, format!("F_λ(0) ≠ 0 at λ = {}", eigen.lambda)));
            }
        }
    }
    Ok(EigenfunctionProfile {
        eigen: *eigen,
        x_grid: x_grid.clone(),
        g_values: g.values,
        f_values,
        method,
        error_estimate,
    })
}

/// F_λ(x) at a single point.
pub fn f_value(exp: &LevyExponent, eigen: &EigenData, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let g = g_value(exp, eigen, x, cfg)?;
    Ok(Estimate {
        value: (eigen.lambda * x.abs() + eigen.theta).sin() - g.value,
        error: g.error + eigen.sin_error(),
        evaluations: g.evaluations,
    })
}

/// ∫ F_λ(x) e^{−ξ|x|} dx = (2/ξ)(K_λ L_λ(ξ) − K_λ(ξ))/√(1 + K_λ²).
#[allow(non_snake_case)]
pub fn laplace_F(exp: &LevyExponent, eigen: &EigenData, xi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("laplace_F needs ξ > 0, got {xi}")));
    }
    let kx = k_weighted(exp, eigen.lambda, xi, cfg)?;
    let value = 2.0 / xi * (eigen.k * l_weight(eigen.lambda, xi) - kx.value) * eigen.cos_theta;
    let err = 2.0 / xi * (eigen.k_error + kx.error);
    if exp.known_concave_half() && value < -(cfg.abs_tol + err) {
        return Err(Error::Positivity {
            value,
            context: format!("Laplace transform of F_λ at λ = {}, ξ = {xi}", eigen.lambda),
        });
    }
    Ok(value)
}

/// ∫₀^∞ G_λ = (cos ϑ_λ/λ)(1 − λΨ'(λ)/(2Ψ(λ))). G_λ is even, so the integral over ℝ is twice
/// this, matching the Fourier symbol at 0.
pub fn g_integral(exp: &LevyExponent, eigen: &EigenData) -> f64 {
    let l = eigen.lambda;
    eigen.cos_theta / l * (1.0 - l * exp.psi_prime(l) / (2.0 * exp.psi(l)))
}

/// F_λ at every point of `xs` (G through a fixed Laplace rule where it applies), with an error bound.
pub(crate) fn f_values_fast(
    exp: &LevyExponent,
    e: &EigenData,
    xs: &[f64],
    cfg: &QuadratureConfig,
) -> Result<(Vec<f64>, f64)> {
    let y_min = xs.iter().map(|x| x.abs()).filter(|&y| y > 0.0).fold(f64::INFINITY, f64::min);
    let table = (exp.supports_holomorphic() && !exp.is_brownian()).then(|| LaplaceTable::reaching(exp, e, y_min));
    // many points: G is completely monotone, hence smooth in log y, so sample it sparsely
    let interp = table.as_ref().and_then(|tb| {
        let covered = xs.iter().map(|x| x.abs()).filter(|&y| y > 0.0 && tb.covers(y));
        let (lo, hi) = covered.fold((f64::INFINITY, 0.0f64), |(l, h), y| (l.min(y), h.max(y)));
        let count = xs.len();
        (hi > lo && count > 4 * LogChebyshev::nodes_for(lo, hi)).then(|| LogChebyshev::new(tb, lo, hi))
    });
    let mut err = e.sin_error();
    if let Some(ip) = &interp {
        err = err.max(ip.error);
    }
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if x == 0.0 {
            out.push(0.0);
            continue;
        }
        let s = (e.lambda * x.abs() + e.theta).sin();
        let g = if exp.is_brownian() {
            (0.0, 0.0)
        } else if let Some(v) = interp.as_ref().and_then(|ip| ip.eval(x.abs())) {
            (v, 0.0)
        } else {
            match table.as_ref().and_then(|tb| tb.eval(x)) {
                Some(v) => v,
                None => {
                    let est = g_value(exp, e, x, cfg)?;
                    (est.value, est.error)
                }
            }
        };
        err = err.max(g.1);
        out.push(s - g.0);
    }
    Ok((out, err))
}

/// Piecewise Chebyshev interpolant of G_λ in u = ln y on [lo, hi].
struct LogChebyshev {
    u0: f64,
    width: f64,
    /// Samples at the Chebyshev-Lobatto points of each segment.
    segments: Vec<Vec<f64>>,
    error: f64,
}

impl LogChebyshev {
    const POINTS: usize = 24;
    const SEGMENT: f64 = 2.0;

    fn segment_count(lo: f64, hi: f64) -> usize {
        ((hi.ln() - lo.ln()) / Self::SEGMENT).ceil().max(1.0) as usize
    }

    fn nodes_for(lo: f64, hi: f64) -> usize {
        Self::segment_count(lo, hi) * Self::POINTS
    }

    fn new(table: &LaplaceTable, lo: f64, hi: f64) -> Self {
        let n = Self::segment_count(lo, hi);
        let (u0, u1) = (lo.ln(), hi.ln());
        let width = (u1 - u0) / n as f64;
        let m = Self::POINTS - 1;
        let mut error = 0.0f64;
        let segments = (0..n)
            .map(|k| {
                let a = u0 + k as f64 * width;
                let vals: Vec<f64> = (0..=m)
                    .map(|j| {
                        let u = a + 0.5 * width * (1.0 - (PI * j as f64 / m as f64).cos());
                        let (v, e) = table.eval(u.exp()).expect("covered point");
                        error = error.max(e);
                        v
                    })
                    .collect();
                error = error.max(chebyshev_tail(&vals));
                vals
            })
            .collect();
        Self { u0, width, segments, error }
    }

    fn eval(&self, y: f64) -> Option<f64> {
        let u = y.ln();
        let pos = (u - self.u0) / self.width;
        let n = self.segments.len();
        if !(pos >= -1e-12 && pos <= n as f64 + 1e-12) {
            return None;
        }
        let k = (pos.floor().max(0.0) as usize).min(n - 1);
        // local coordinate in [-1, 1], node j at −cos(πj/m)
        let s = 2.0 * (pos - k as f64) - 1.0;
        Some(barycentric_lobatto(&self.segments[k], s))
    }
}

/// Barycentric interpolation through values at x_j = −cos(πj/m).
fn barycentric_lobatto(vals: &[f64], s: f64) -> f64 {
    let m = vals.len() - 1;
    let (mut num, mut den) = (0.0, 0.0);
    for (j, v) in vals.iter().enumerate() {
        let xj = -(PI * j as f64 / m as f64).cos();
        let d = s - xj;
        if d == 0.0 {
            return *v;
        }
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == m {
            w *= 0.5;
        }
        num += w * v / d;
        den += w / d;
    }
    num / den
}

/// |c_{m−1}| + |c_m| of the Chebyshev expansion through Lobatto samples.
fn chebyshev_tail(vals: &[f64]) -> f64 {
    let m = vals.len() - 1;
    let coef = |k: usize| {
        let mut c = 0.0;
        for (j, v) in vals.iter().enumerate() {
            let w = if j == 0 || j == m { 0.5 } else { 1.0 };
            c += w * v * (PI * (j * k) as f64 / m as f64).cos();
        }
        let scale = if k == m { 1.0 } else { 2.0 };
        scale * c / m as f64
    };
    coef(m - 1).abs() + coef(m).abs()
}

/// Fixed Laplace-route rule for one λ: G_λ(y) for many y as exponential sums.
pub(crate) struct LaplaceTable {
    nodes: Vec<f64>,
    kronrod: Vec<f64>,
    gauss: Vec<f64>,
    panel_end: Vec<usize>,
    floor_error: f64,
    xi_max: f64,
}

impl LaplaceTable {
    const PANEL: f64 = 0.75;
    const SPAN_LO: f64 = 1e-8;
    const SPAN_HI: f64 = 1e6;

    #[cfg(test)]
    pub(crate) fn new(exp: &LevyExponent, eigen: &EigenData) -> Self {
        Self::reaching(exp, eigen, f64::INFINITY)
    }

    /// A table that also covers every y ≥ `y_min`, however small λ is.
    pub(crate) fn reaching(exp: &LevyExponent, eigen: &EigenData, y_min: f64) -> Self {
        let lambda = eigen.lambda;
        let xi_max = (lambda * Self::SPAN_HI).max(41.0 / y_min);
        let psi_l = exp.psi(lambda);
        let pref = exp.psi_prime(lambda) * eigen.cos_theta / PI;
        // start where the density has become negligible; it vanishes like a power of ξ at 0
        let floor = |xi: f64| (laplace_density(exp, psi_l, xi) * xi * pref).abs();
        let mut lo = lambda * 1e-3;
        while lo > lambda * Self::SPAN_LO && floor(lo) > 1e-15 {
            lo *= 0.1;
        }
        let (u0, u1) = (lo.ln(), xi_max.ln());
        let mut edges: Vec<f64> = vec![u0, u1, lambda.ln()];
        for bp in exp.imag_axis_breakpoints() {
            // geometric grading towards the branch point, where the density has an algebraic kink
            let u = bp.ln();
            edges.push(u);
            edges.extend((1..=30).map(|k| u + (2f64.powi(-k)).ln_1p()));
        }
        edges.retain(|u| *u >= u0 && *u <= u1);
        edges.sort_by(f64::total_cmp);
        let mut panels = Vec::new();
        for w in edges.windows(2) {
            let n = ((w[1] - w[0]) / Self::PANEL).ceil().max(1.0) as usize;
            for i in 0..n {
                let a = w[0] + (w[1] - w[0]) * i as f64 / n as f64;
                let b = w[0] + (w[1] - w[0]) * (i + 1) as f64 / n as f64;
                panels.push((a, b));
            }
        }
        let mut t = LaplaceTable {
            nodes: Vec::new(),
            kronrod: Vec::new(),
            gauss: Vec::new(),
            panel_end: Vec::new(),
            floor_error: 0.0,
            xi_max,
        };
        for (a, b) in panels {
            for (u, wk, wg) in kronrod_nodes(a, b) {
                let xi = u.exp();
                let rho = laplace_density(exp, psi_l, xi) * xi * pref;
                t.nodes.push(xi);
                t.kronrod.push(wk * rho);
                t.gauss.push(wg * rho);
            }
            t.panel_end.push(t.nodes.len());
        }
        t.floor_error = floor(lo);
        t
    }

    pub(crate) fn covers(&self, y: f64) -> bool {
        y.abs() * self.xi_max >= 40.0
    }

    /// (G(y), error), or `None` when y is too close to 0 for the finite rule.
    pub(crate) fn eval(&self, y: f64) -> Option<(f64, f64)> {
        let y = y.abs();
        if !self.covers(y) {
            return None;
        }
        let (mut total, mut err) = (0.0, self.floor_error);
        let mut start = 0;
        'outer: for &end in &self.panel_end {
            let (mut k, mut g) = (0.0f64, 0.0f64);
            for i in start..end {
                let a = self.nodes[i] * y;
                if a > 40.0 {
                    total += k;
                    err += (k - g).abs();
                    break 'outer;
                }
                let e = (-a).exp();
                k += self.kronrod[i] * e;
                g += self.gauss[i] * e;
            }
            total += k;
            err += (k - g).abs();
            start = end;
        }
        Some((total, err))
    }
}
