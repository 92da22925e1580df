//! Numerical integration: adaptive Gauss-Kronrod, improper integrals with
//! power-law tails, folded principal values and oscillatory cosine transforms.

mod adaptive;
mod fourier;
mod improper;
mod pv;
mod rules;

use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use adaptive::{integrate, integrate_with_breaks};
pub use fourier::{cosine_transform_at, fourier_cosine_inverse, one_minus_cosine_transform_at, CosineSymbol};
pub use improper::{improper_integral, Improper, Tail, TailModel};
pub use pv::{pv_integral, pv_psi_integral, Dispersion, FnWeight, Lorentz, PvWeight, Quadratic, Unit};
pub use rules::{gauss_legendre, kronrod21, kronrod_nodes, GaussLegendre};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Half-width of the Taylor window around a removable singularity, relative to λ.
    pub singularity_window: f64,
    /// Ratio between the truncation radius of an improper integral and its natural scale.
    pub tail_cutoff_factor: f64,
    /// Half-periods summed directly before series acceleration kicks in.
    pub oscillatory_blocks: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            singularity_window: 1e-3,
            tail_cutoff_factor: 1e6,
            oscillatory_blocks: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_subdivisions > 0
            && self.singularity_window > 0.0
            && self.singularity_window < 0.5
            && self.tail_cutoff_factor > 1.0
            && self.oscillatory_blocks > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid quadrature config {self:?}")))
        }
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
        }
    }

    /// Bit pattern used for cache keys.
    pub(crate) fn key(&self) -> [u64; 6] {
        [
            self.abs_tol.to_bits(),
            self.rel_tol.to_bits(),
            self.max_subdivisions as u64,
            self.singularity_window.to_bits(),
            self.tail_cutoff_factor.to_bits(),
            self.oscillatory_blocks as u64,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs.max(self.rel * magnitude)
    }

    pub fn split(&self, parts: usize) -> Tolerance {
        Tolerance {
            abs: self.abs / parts as f64,
            rel: self.rel,
        }
    }
}

/// Integral value with an error bound and the number of integrand calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<V = f64> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
}

impl<V: Scalar> Estimate<V> {
    pub fn zero() -> Self {
        Self {
            value: V::ZERO,
            error: 0.0,
            evaluations: 0,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            error: self.error * c.abs(),
            evaluations: self.evaluations,
        }
    }
}

impl<V: Scalar> Add for Estimate<V> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
        }
    }
}

/// Values an integrator can accumulate: `f64` and `Complex64`.
pub trait Scalar:
    Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign + 'static
{
    const ZERO: Self;
    fn norm(self) -> f64;
    fn finite(self) -> bool;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    fn norm(self) -> f64 {
        self.abs()
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
