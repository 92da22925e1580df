//! Stieltjes functions φ, their boundary values on the negative axis and the key identity.
//!
//! cargo run --release --example resolvent_boundary

use std::f64::consts::PI;

use levy_spectral::{LevyExponent, QuadratureConfig, ResolventSet};
use num_complex::Complex64;

fn main() -> levy_spectral::Result<()> {
    let set = ResolventSet::new(LevyExponent::stable(1.5)?, QuadratureConfig::default())?;
    for z in [0.1, 1.0, 10.0] {
        println!(
            "z = {z:>4}: φ = {:.8}, φ(1, z) = {:.8}, u_z(1) = {:.8}, E₁e^(−zτ₀) = {:.8}",
            set.phi(z)?.value,
            set.phi_xi(1.0, z)?.value,
            set.resolvent_u(z, 1.0)?.value,
            set.laplace_hitting(z, 1.0)?
        );
    }

    for lambda in [0.5, 1.0, 2.0] {
        let (a, b) = set.phi_plus_boundary(lambda, 1.0)?;
        let z = Complex64::new(-set.exp.psi(lambda), 1e-5);
        let (na, nb) = (set.phi_complex(z)?.value, set.phi_xi_complex(1.0, z)?.value);
        println!("λ = {lambda}: φ⁺(−Ψ(λ)) = {a:.6} (approach {na:.6}), φ⁺(1, −Ψ(λ)) = {b:.6} (approach {nb:.6})");
    }

    for (a, b) in [(1.0, 1.0), (1.0, 3.0)] {
        let got = set.capital_phi(a, b, 0.0)?.value;
        println!("Φ({a}, {b}, 0) = {got:.8}, (π/2)ξ₁ξ₂/(ξ₁+ξ₂) = {:.8}", PI / 2.0 * a * b / (a + b));
    }
    Ok(())
}
