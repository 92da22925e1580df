//! F_λ = sin(λ|x| + ϑ_λ) − G_λ on a grid, with G by both routes.
//!
//! cargo run --release --example eigenfunction_profile

use levy_spectral::eigenfunctions::{compute_eigendata, eval_F, eval_G, eval_G_laplace, g_integral};
use levy_spectral::{LevyExponent, QuadratureConfig, RealGrid};

fn main() -> levy_spectral::Result<()> {
    let cfg = QuadratureConfig::default();
    let exp = LevyExponent::stable(1.5)?;
    let e = compute_eigendata(&exp, 1.0, &cfg)?;
    let x = RealGrid::linear(0.0, 8.0, 17)?;

    let profile = eval_F(&exp, &e, &x, &cfg)?;
    let fourier = eval_G(&exp, &e, &x, &cfg)?;
    let laplace = eval_G_laplace(&exp, &e, &x, &cfg)?;
    println!("{exp}, λ = 1, ϑ = {:.6}, G by {:?}", e.theta, profile.method);
    println!("{:>5} {:>12} {:>12} {:>12} {:>9}", "x", "F", "G", "sine", "|ΔG|");
    for (i, xi) in x.iter().enumerate() {
        println!(
            "{xi:>5.2} {:>12.8} {:>12.8} {:>12.8} {:>9.1e}",
            profile.f_values[i],
            profile.g_values[i],
            profile.sine_envelope()[i],
            (fourier.values[i] - laplace.values[i]).abs()
        );
    }
    println!("G(0) = {:.8} = sin ϑ = {:.8}", profile.g_values[0], e.sin_theta);
    println!("∫₀^∞ G = {:.8}", g_integral(&exp, &e));
    Ok(())
}
