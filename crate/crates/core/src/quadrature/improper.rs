use super::adaptive::integrate_with_breaks;
use super::{Estimate, QuadratureConfig, Scalar};
use crate::error::{Error, Result};

/// Asymptotic model `f(ξ) ≈ known(ξ) + ξ^{-q}(A + B ξ^{-s})` used beyond the truncation radius.
pub struct TailModel<'a, V> {
    pub exponent: f64,
    pub gap: f64,
    /// A part of the integrand whose tail integral is known exactly: `(part, ∫_r^∞ part)`.
    pub known: Option<(&'a (dyn Fn(f64) -> V + Sync), &'a (dyn Fn(f64) -> V + Sync))>,
}

pub enum Tail<'a, V> {
    Power(TailModel<'a, V>),
    /// The integrand is negligible past the radius.
    Vanishing,
}

impl<'a, V> Tail<'a, V> {
    pub fn power(exponent: f64, gap: f64) -> Self {
        Tail::Power(TailModel { exponent, gap, known: None })
    }
}

/// Description of an integral over `[lower, ∞)`.
pub struct Improper<'a, V> {
    pub lower: f64,
    /// Length scale on which the integrand has structure.
    pub scale: f64,
    pub breakpoints: Vec<f64>,
    pub tail: Tail<'a, V>,
    /// Truncation radius; defaults to `scale * tail_cutoff_factor`.
    pub radius: Option<f64>,
}

impl<'a, V> Improper<'a, V> {
    pub fn new(scale: f64, tail: Tail<'a, V>) -> Self {
        Self {
            lower: 0.0,
            scale,
            breakpoints: Vec::new(),
            tail,
            radius: None,
        }
    }

    pub fn from(mut self, lower: f64) -> Self {
        self.lower = lower;
        self
    }

    pub fn breaks(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    pub fn radius(mut self, r: f64) -> Self {
        self.radius = Some(r);
        self
    }
}

/// ∫_lower^∞ f: adaptive on the near field, logarithmic variable on the far
/// field, and a fitted power-law remainder past the radius.
pub fn improper_integral<V: Scalar, F: Fn(f64) -> V + Sync + ?Sized>(
    f: &F,
    spec: &Improper<'_, V>,
    cfg: &QuadratureConfig,
) -> Result<Estimate<V>> {
    if !(spec.scale > 0.0) || !spec.lower.is_finite() {
        return Err(Error::domain("improper integral needs a positive scale and finite lower limit"));
    }
    let tol = cfg.tolerance().split(3);
    let mut bps: Vec<f64> = spec
        .breakpoints
        .iter()
        .copied()
        .filter(|&p| p > spec.lower && p.is_finite())
        .collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    let max_bp = bps.last().copied().unwrap_or(spec.lower);
    let near_end = (spec.lower + spec.scale).max(2.0 * max_bp).max(spec.lower + 1e-300);
    let radius = spec
        .radius
        .unwrap_or(near_end.max(spec.scale) * cfg.tail_cutoff_factor);

    let mut result;
    if radius <= near_end {
        let mut pts = vec![spec.lower];
        pts.extend(bps.iter().copied().filter(|&p| p < radius));
        pts.push(radius);
        result = integrate_with_breaks(f, &pts, tol, cfg.max_subdivisions)?;
    } else {
        let mut pts = vec![spec.lower];
        pts.extend(bps.iter().copied().filter(|&p| p < near_end));
        pts.push(near_end);
        result = integrate_with_breaks(f, &pts, tol, cfg.max_subdivisions)?;
        let (u0, u1) = (near_end.ln(), radius.ln());
        let g = |u: f64| {
            let x = u.exp();
            f(x) * x
        };
        let n = ((u1 - u0) / 2.0).ceil().max(1.0) as usize;
        let upts: Vec<f64> = (0..=n).map(|i| u0 + (u1 - u0) * i as f64 / n as f64).collect();
        result = result + integrate_with_breaks(&g, &upts, tol, cfg.max_subdivisions)?;
    }

    if let Tail::Power(model) = &spec.tail {
        let tail = power_tail(f, model, radius)?;
        result = result + tail;
        let target = cfg.tolerance().target(result.value.norm());
        if tail.error > target {
            return Err(Error::accuracy(
                result.value.norm(),
                result.error,
                format!("power-law tail beyond {radius:e} is not resolved"),
            ));
        }
    }
    Ok(result)
}

fn power_tail<V: Scalar, F: Fn(f64) -> V + ?Sized>(
    f: &F,
    model: &TailModel<'_, V>,
    r: f64,
) -> Result<Estimate<V>> {
    let q = model.exponent;
    let s = model.gap;
    if !(q > 1.0) || !(s > 0.0) {
        return Err(Error::domain(format!("power tail needs exponent > 1 (got {q}) and gap > 0")));
    }
    let h = |x: f64| match model.known {
        Some((part, _)) => f(x) - part(x),
        None => f(x),
    };
    let xs = [r, 2.0 * r, 4.0 * r, 8.0 * r];
    // y = x^q h(x) ≈ a + b x^{-s} + c x^{-2s}
    let ys: Vec<V> = xs.iter().map(|&x| h(x) * x.powf(q)).collect();
    // ∫_r^∞ x^{-q-ks} dx
    let moment = |k: f64| r.powf(1.0 - q - k * s) / (q + k * s - 1.0);

    // two terms through r, 2r; checked at 4r
    let (u1, u2) = (xs[0].powf(-s), xs[1].powf(-s));
    let b2 = (ys[0] - ys[1]) * (1.0 / (u1 - u2));
    let a2 = ys[0] - b2 * u1;
    let resid2 = (ys[2] - (a2 + b2 * xs[2].powf(-s))).norm() * xs[2].powf(-q);
    let two = (a2 * moment(0.0) + b2 * moment(1.0), resid2 * xs[2] / (q - 1.0));

    // three terms through r, 2r, 4r; checked at 8r
    let u: Vec<f64> = xs[..3].iter().map(|x| x.powf(-s)).collect();
    let m = [[1.0, u[0], u[0] * u[0]], [1.0, u[1], u[1] * u[1]], [1.0, u[2], u[2] * u[2]]];
    let inv = inverse3(&m);
    let coef = |i: usize| ys[0] * inv[i][0] + ys[1] * inv[i][1] + ys[2] * inv[i][2];
    let (a3, b3, c3) = (coef(0), coef(1), coef(2));
    let u3 = xs[3].powf(-s);
    let resid3 = (ys[3] - (a3 + b3 * u3 + c3 * u3 * u3)).norm() * xs[3].powf(-q);
    let three = (a3 * moment(0.0) + b3 * moment(1.0) + c3 * moment(2.0), resid3 * xs[3] / (q - 1.0));

    let (mut value, fit_error) = if three.1 < two.1 { three } else { two };
    if let Some((_, tail)) = model.known {
        value += tail(r);
    }
    let error = fit_error + 4.0 * f64::EPSILON * value.norm();
    if !value.finite() {
        return Err(Error::domain("non-finite tail estimate"));
    }
    Ok(Estimate { value, error, evaluations: 4 })
}

fn inverse3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            // adjugate is the transposed cofactor matrix
            *v = c(j, i) / det;
        }
    }
    out
}
