//! Generalized eigenfunctions, killed transition densities and point-hitting
//! times for one-dimensional symmetric Lévy processes killed at the origin.

mod cache;
pub mod cli;
pub mod eigenfunctions;
pub mod error;
pub mod exponents;
pub mod grid;
pub mod kernels;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use exponents::{AssumptionReport, Family, LevyExponent};
pub use grid::{GridFunction, RealGrid, Spacing};
pub use quadrature::{Estimate, QuadratureConfig};
pub use eigenfunctions::{EigenData, EigenfunctionProfile, GMethod};
pub use kernels::{KernelGrid, ResolventSet};
pub use spectral::TransformPair;
