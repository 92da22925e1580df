//! Distribution of the first hitting time of 0.
//!
//! cargo run --release --example hitting_time

use levy_spectral::kernels::{hitting_prob_finite, hitting_tail, laplace_hitting};
use levy_spectral::{LevyExponent, QuadratureConfig};

fn main() -> levy_spectral::Result<()> {
    let cfg = QuadratureConfig::default();
    let times = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0];

    for spec in ["stable:alpha=2", "stable:alpha=1.5", "rel:alpha=1.5,m=1", "mix:alpha=0.5,beta=1"] {
        let exp: LevyExponent = spec.parse()?;
        let finite = hitting_prob_finite(&exp, 1.0, &cfg)?;
        println!("{exp}, x = 1: P(τ₀ < ∞) = {finite:.6}, E e^(−τ₀) = {:.6}", laplace_hitting(&exp, 1.0, 1.0, &cfg)?);
        for &t in &times {
            println!("  P(t < τ₀ < ∞) at t = {t:>5}: {:.8}", hitting_tail(&exp, t, 1.0, &cfg)?);
        }
    }
    let erf = 0.520_499_877_813_046_5;
    println!("Brownian check: tail(1, 1) = erf(1/2) = {erf}");
    Ok(())
}
