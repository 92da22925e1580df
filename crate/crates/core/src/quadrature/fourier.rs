use std::f64::consts::PI;

use rayon::prelude::*;

use super::adaptive::integrate_with_breaks;
use super::improper::{improper_integral, Improper, Tail, TailModel};
use super::{Estimate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::grid::{GridFunction, RealGrid};

/// Even, integrable function on [0, ∞) to be cosine-transformed.
pub trait CosineSymbol: Sync {
    fn eval(&self, xi: f64) -> f64;
    /// Where the symbol has its structure; the oscillatory tail starts a few scales out.
    fn scale(&self) -> f64;
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// `symbol(ξ) − known(ξ) ≈ ξ^{-q}(A + Bξ^{-gap})` for large ξ.
    fn tail_exponent(&self) -> f64;
    fn tail_gap(&self) -> f64 {
        1.0
    }
    fn known(&self, _xi: f64) -> f64 {
        0.0
    }
    fn known_tail(&self, _r: f64) -> f64 {
        0.0
    }
    /// Radius past which the symbol is negligible, for rapidly decaying symbols.
    fn cutoff(&self) -> Option<f64> {
        None
    }
}

/// Terms added after the direct blocks for the averaging transform.
const EULER_TERMS: usize = 24;

fn zero_tail_spec<'a, S: CosineSymbol + ?Sized>(
    symbol: &'a S,
    known: &'a (dyn Fn(f64) -> f64 + Sync),
    known_tail: &'a (dyn Fn(f64) -> f64 + Sync),
) -> Improper<'a, f64> {
    let tail = match symbol.cutoff() {
        Some(_) => Tail::Vanishing,
        None => Tail::Power(TailModel {
            exponent: symbol.tail_exponent(),
            gap: symbol.tail_gap(),
            known: Some((known, known_tail)),
        }),
    };
    let mut spec = Improper::new(symbol.scale(), tail).breaks(symbol.breakpoints());
    spec.radius = symbol.cutoff();
    spec
}

/// Zeros of cos(ωξ): (k + ½)π/ω.
fn cos_zero(omega: f64, k: usize) -> f64 {
    (k as f64 + 0.5) * PI / omega
}

/// Index of the first zero past the symbol's structure.
fn first_block(symbol: &(impl CosineSymbol + ?Sized), omega: f64) -> usize {
    let max_bp = symbol.breakpoints().into_iter().fold(0.0, f64::max);
    let start = (4.0 * symbol.scale()).max(2.0 * max_bp);
    (start * omega / PI - 0.5).ceil().max(0.0) as usize
}

/// ∫_a^b of an integrand oscillating like cos(ωξ), with the symbol's
/// breakpoints and the zeros of the cosine as panel edges.
fn head<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    omega: f64,
    bps: &[f64],
    tol: super::Tolerance,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let mut pts = vec![a];
    pts.extend(bps.iter().copied().filter(|&p| p > a && p < b));
    let k_max = (b * omega / PI - 0.5).floor();
    if k_max >= 0.0 && k_max < 200_000.0 {
        pts.extend((0..=k_max as usize).map(|k| cos_zero(omega, k)).filter(|&z| z > a && z < b));
    }
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    integrate_with_breaks(f, &pts, tol, cfg.max_subdivisions)
}

/// Order of the binomial sum that cancels the alternating part of the blocks.
const SMOOTH_ORDER: usize = 8;

fn binomial(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Most half-period blocks summed before the tail is accepted as it stands.
const MAX_BLOCKS: usize = 8192;

/// ∫_{z_k0}^∞ s(ξ) cos(ωξ) dξ: direct half-period blocks, then averaged partial sums.
///
/// Averaging only removes the alternating part of the block sums. A symbol that itself
/// oscillates (cos ξ inside Ψ, say) resonates with cos(ωξ) and leaves a slowly decaying
/// sign-definite part; its size is read off a second difference of the last blocks, and the
/// direct range is doubled until the remaining tail of that part is below target.
fn oscillatory_tail<F: Fn(f64) -> f64 + ?Sized>(
    s: &F,
    omega: f64,
    k0: usize,
    tol: super::Tolerance,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let g = |xi: f64| s(xi) * (omega * xi).cos();
    let block = |j: usize| {
        integrate_with_breaks(&g, &[cos_zero(omega, k0 + j), cos_zero(omega, k0 + j + 1)], tol, cfg.max_subdivisions)
    };
    let mut blocks: Vec<Estimate> = Vec::new();
    let mut direct = cfg.oscillatory_blocks;
    loop {
        for j in blocks.len()..direct + EULER_TERMS {
            blocks.push(block(j)?);
        }
        let head: f64 = blocks[..direct].iter().map(|b| b.value).sum();
        let mut run = 0.0;
        let partial: Vec<f64> = blocks[direct..]
            .iter()
            .map(|b| {
                run += b.value;
                run
            })
            .collect();
        let (accelerated, accel_err) = euler_average(&partial);
        let n = blocks.len();
        let smooth = (blocks[n - 1 - SMOOTH_ORDER..].iter().zip(binomial(SMOOTH_ORDER)))
            .map(|(b, c)| c * b.value)
            .sum::<f64>()
            .abs()
            / 2f64.powi(SMOOTH_ORDER as i32);
        // a sign-definite part decaying at least like ξ^{-2} has tail ≤ (last term)·(index)
        let residual = smooth * (k0 + n) as f64;
        let value = head + accelerated;
        let target = cfg.tolerance().target(value.abs());
        if residual <= target || direct >= MAX_BLOCKS {
            return Ok(Estimate {
                value,
                error: blocks.iter().map(|b| b.error).sum::<f64>() + accel_err + residual,
                evaluations: blocks.iter().map(|b| b.evaluations).sum(),
            });
        }
        direct *= 2;
    }
}

fn check(total: Estimate, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    // tolerances refer to the returned, already scaled value; the error is a sum over
    // separately converged blocks, so it may carry a few times the target
    let target = cfg.tolerance().target(total.value.abs() / PI);
    if total.error / PI > 10.0 * target {
        return Err(Error::accuracy(
            total.value / PI,
            total.error / PI,
            format!("cosine transform at x = {x} did not converge"),
        ));
    }
    Ok(total.scale(1.0 / PI))
}

/// (1/π) ∫₀^∞ symbol(ξ) cos(ξx) dξ at a single x.
pub fn cosine_transform_at<S: CosineSymbol + ?Sized>(symbol: &S, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let omega = x.abs();
    let f = |xi: f64| symbol.eval(xi);
    if omega == 0.0 {
        let known = |xi: f64| symbol.known(xi);
        let known_tail = |r: f64| symbol.known_tail(r);
        let spec = zero_tail_spec(symbol, &known, &known_tail);
        return Ok(improper_integral(&f, &spec, cfg)?.scale(1.0 / PI));
    }
    let g = |xi: f64| f(xi) * (omega * xi).cos();
    let bps = symbol.breakpoints();
    let pieces = cfg.oscillatory_blocks + EULER_TERMS + 1;
    let tol = cfg.tolerance().split(pieces);
    if let Some(r) = symbol.cutoff() {
        let total = head(&g, 0.0, r, omega, &bps, cfg.tolerance(), cfg)?;
        return check(total, x, cfg);
    }
    let k0 = first_block(symbol, omega);
    let mut total = head(&g, 0.0, cos_zero(omega, k0), omega, &bps, tol, cfg)?;
    total = total + oscillatory_tail(&f, omega, k0, tol, cfg)?;
    check(total, x, cfg)
}

/// (1/π) ∫₀^∞ symbol(ξ) (1 − cos ξx) dξ, without forming the difference of two large integrals.
pub fn one_minus_cosine_transform_at<S: CosineSymbol + ?Sized>(
    symbol: &S,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let omega = x.abs();
    if omega == 0.0 {
        return Ok(Estimate::zero());
    }
    let f = |xi: f64| symbol.eval(xi);
    let h = |xi: f64| f(xi) * (1.0 - (omega * xi).cos());
    let bps = symbol.breakpoints();
    if let Some(r) = symbol.cutoff() {
        let total = head(&h, 0.0, r, omega, &bps, cfg.tolerance(), cfg)?;
        return check(total, x, cfg);
    }
    let pieces = cfg.oscillatory_blocks + EULER_TERMS + 2;
    let tol = cfg.tolerance().split(pieces);
    let k0 = first_block(symbol, omega);
    let a = cos_zero(omega, k0);
    let mut total = head(&h, 0.0, a, omega, &bps, tol, cfg)?;
    let plain = Improper::new(
        symbol.scale().max(a),
        Tail::power(symbol.tail_exponent(), symbol.tail_gap()),
    )
    .from(a);
    total = total + improper_integral(&f, &plain, cfg)?;
    let osc = oscillatory_tail(&f, omega, k0, tol, cfg)?;
    total.value -= osc.value;
    total.error += osc.error;
    total.evaluations += osc.evaluations;
    check(total, x, cfg)
}

/// Repeated neighbour averaging of the partial sums of an alternating series.
fn euler_average(partial: &[f64]) -> (f64, f64) {
    let mut level = partial.to_vec();
    let mut prev_last = *level.last().unwrap_or(&0.0);
    while level.len() > 1 {
        prev_last = *level.last().unwrap();
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let value = level.first().copied().unwrap_or(0.0);
    (value, (value - prev_last).abs())
}

/// (1/π) ∫₀^∞ symbol(ξ) cos(ξx) dξ on every grid point, in parallel.
pub fn fourier_cosine_inverse<S: CosineSymbol + ?Sized>(
    symbol: &S,
    x_grid: &RealGrid,
    cfg: &QuadratureConfig,
) -> Result<GridFunction> {
    let results: Vec<Estimate> = x_grid
        .points()
        .par_iter()
        .map(|&x| cosine_transform_at(symbol, x, cfg))
        .collect::<Result<_>>()?;
    Ok(GridFunction::new(
        x_grid.clone(),
        results.iter().map(|r| r.value).collect(),
        results.iter().map(|r| r.error).collect(),
    ))
}
