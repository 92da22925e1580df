use super::adaptive::integrate_with_breaks;
use super::improper::{improper_integral, Improper, Tail};
use super::{Estimate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::exponents::LevyExponent;

/// A strictly increasing function D on (0, ∞) whose difference quotient
/// `D'(λ)/(D(λ) − D(ζ))` is integrated in principal value.
pub trait Dispersion: Sync {
    fn value(&self, z: f64) -> f64;
    fn slope(&self, z: f64) -> f64;
    fn curvature(&self, z: f64) -> f64;
    /// `D(ζ) ~ c ζ^p` as ζ → ∞.
    fn growth(&self) -> f64;
    /// Exponent gap to the first correction of that power law.
    fn growth_gap(&self) -> f64;
    /// Length past which the power-law growth is established.
    fn crossover(&self) -> f64 {
        0.0
    }
}

impl Dispersion for LevyExponent {
    fn value(&self, z: f64) -> f64 {
        self.psi(z)
    }
    fn slope(&self, z: f64) -> f64 {
        self.psi_prime(z)
    }
    fn curvature(&self, z: f64) -> f64 {
        self.psi_second(z)
    }
    fn growth(&self) -> f64 {
        self.growth_exponent()
    }
    fn growth_gap(&self) -> f64 {
        self.growth_gap()
    }
    fn crossover(&self) -> f64 {
        self.crossover()
    }
}

/// D(ζ) = ζ², for which the PV of the plain kernel vanishes.
pub struct Quadratic;

impl Dispersion for Quadratic {
    fn value(&self, z: f64) -> f64 {
        z * z
    }
    fn slope(&self, z: f64) -> f64 {
        2.0 * z
    }
    fn curvature(&self, _: f64) -> f64 {
        2.0
    }
    fn growth(&self) -> f64 {
        2.0
    }
    fn growth_gap(&self) -> f64 {
        2.0
    }
}

pub trait PvWeight: Sync {
    fn value(&self, z: f64) -> f64;
    fn slope(&self, z: f64) -> f64;
    /// `w(ζ) ~ ζ^{-decay}` at infinity.
    fn decay(&self) -> f64 {
        0.0
    }
    /// Length on which the weight varies.
    fn scale(&self) -> f64 {
        0.0
    }
}

pub struct Unit;

impl PvWeight for Unit {
    fn value(&self, _: f64) -> f64 {
        1.0
    }
    fn slope(&self, _: f64) -> f64 {
        0.0
    }
}

/// ζ ↦ ξ²/(ξ² + ζ²).
pub struct Lorentz(pub f64);

impl PvWeight for Lorentz {
    fn value(&self, z: f64) -> f64 {
        let x2 = self.0 * self.0;
        x2 / (x2 + z * z)
    }
    fn slope(&self, z: f64) -> f64 {
        let x2 = self.0 * self.0;
        let d = x2 + z * z;
        -2.0 * x2 * z / (d * d)
    }
    fn decay(&self) -> f64 {
        2.0
    }
    fn scale(&self) -> f64 {
        self.0
    }
}

/// Weight from closures; `slope` must be the derivative of `value`.
pub struct FnWeight<F, G> {
    pub value: F,
    pub slope: G,
    pub decay: f64,
}

impl<F: Fn(f64) -> f64 + Sync, G: Fn(f64) -> f64 + Sync> PvWeight for FnWeight<F, G> {
    fn value(&self, z: f64) -> f64 {
        (self.value)(z)
    }
    fn slope(&self, z: f64) -> f64 {
        (self.slope)(z)
    }
    fn decay(&self) -> f64 {
        self.decay
    }
}

/// (1/π) PV ∫₀^∞ w(ζ) Ψ'(λ)/(Ψ(λ) − Ψ(ζ)) dζ.
pub fn pv_psi_integral<W: PvWeight + ?Sized>(
    exp: &LevyExponent,
    lambda: f64,
    weight: &W,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    pv_integral(exp, lambda, weight, cfg)
}

/// (1/π) PV ∫₀^∞ w(ζ) D'(λ)/(D(λ) − D(ζ)) dζ.
///
/// `(λ/2, 2λ)` is folded onto `s ∈ (1/2, 1)` through ζ = λs and ζ = λ/s so the
/// two poles cancel; inside `1 − s < δ` the folded integrand is replaced by a
/// linear blend towards its Taylor limit at s = 1.
pub fn pv_integral<D: Dispersion + ?Sized, W: PvWeight + ?Sized>(
    d: &D,
    lambda: f64,
    weight: &W,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("principal value needs λ > 0, got {lambda}")));
    }
    let dl = d.value(lambda);
    let d1 = d.slope(lambda);
    if !(d1 > 0.0) {
        return Err(Error::domain(format!("D'(λ) = {d1} is not positive at λ = {lambda}")));
    }
    let f = |z: f64| weight.value(z) * d1 / (dl - d.value(z));
    let tol = cfg.tolerance().split(3);

    let near = integrate_with_breaks(&f, &[0.0, 0.5 * lambda], tol, cfg.max_subdivisions)?;

    let delta = cfg.singularity_window;
    let folded = |s: f64| lambda * f(lambda * s) + lambda / (s * s) * f(lambda / s);
    let limit = weight.value(lambda) * (lambda * d.curvature(lambda) / d1 - 1.0)
        - 2.0 * lambda * weight.slope(lambda);
    let edge = 1.0 - delta;
    let at_edge = folded(edge);
    let h = |s: f64| {
        if s < edge {
            folded(s)
        } else {
            at_edge + (limit - at_edge) * (s - edge) / delta
        }
    };
    let middle = integrate_with_breaks(&h, &[0.5, edge, 1.0], tol, cfg.max_subdivisions)?;

    // the tail fit needs the asymptotic regime of both D and the weight
    let start = 2.0 * lambda;
    let reach = start.max(d.crossover()).max(weight.scale());
    let grading = std::iter::successors(Some(4.0 * start), |p| Some(4.0 * p)).take_while(|&p| p < reach);
    let spec = Improper::new(reach, Tail::power(d.growth() + weight.decay(), d.growth_gap().min(2.0)))
        .from(start)
        .breaks(grading.chain(std::iter::once(reach)));
    let far = improper_integral(&f, &spec, cfg)?;

    Ok((near + middle + far).scale(std::f64::consts::FRAC_1_PI))
}
