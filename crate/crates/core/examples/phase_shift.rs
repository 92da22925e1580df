//! The phase ϑ_λ of the even eigenfunctions, F_λ(x) ≈ sin(λ|x| + ϑ_λ) far from 0.
//!
//! cargo run --release --example phase_shift

use std::f64::consts::PI;

use levy_spectral::eigenfunctions::compute_eigendata;
use levy_spectral::{LevyExponent, QuadratureConfig};

fn main() -> levy_spectral::Result<()> {
    let cfg = QuadratureConfig::default();
    let lambdas = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0];

    println!("stable laws: ϑ_λ = π/α − π/2 for every λ");
    for alpha in [1.1, 1.5, 1.9, 2.0] {
        let exp = LevyExponent::stable(alpha)?;
        let worst = lambdas
            .iter()
            .map(|&l| compute_eigendata(&exp, l, &cfg).map(|e| (e.theta - (PI / alpha - PI / 2.0)).abs()))
            .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))?;
        println!("  α = {alpha}: ϑ = {:.6}, max deviation over λ {worst:.1e}", PI / alpha - PI / 2.0);
    }

    for spec in ["rel:alpha=1.5,m=1", "mix:alpha=1.5,beta=1", "trunc:alpha=1.5,c=1", "bmpoisson:rate=9"] {
        let exp: LevyExponent = spec.parse()?;
        println!("{exp}");
        for &l in &lambdas {
            let e = compute_eigendata(&exp, l, &cfg)?;
            println!("  λ = {l:>6}: K = {:>10.6}, ϑ = {:>9.6}", e.k, e.theta);
        }
    }
    Ok(())
}
