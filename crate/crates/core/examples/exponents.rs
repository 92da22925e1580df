//! Lévy exponents of the built-in families and their hypothesis checks.
//!
//! cargo run --example exponents

use levy_spectral::LevyExponent;

fn main() -> levy_spectral::Result<()> {
    for spec in ["stable:alpha=1.5", "mix:alpha=1.5,beta=1", "rel:alpha=1.5,m=1", "trunc:alpha=1.5,c=1", "bmpoisson:rate=9"] {
        let exp: LevyExponent = spec.parse()?;
        let report = exp.default_assumptions();
        println!("{exp}");
        println!("  Ψ(1) = {:.6}, Ψ'(1) = {:.6}, Ψ''(1) = {:.6}", exp.psi(1.0), exp.psi_prime(1.0), exp.psi_second(1.0));
        println!("  Ψ⁻¹(Ψ(3)) = {:.12}", exp.psi_inverse(exp.psi(3.0)));
        println!(
            "  ∫dξ/(1+Ψ) finite: {}, increasing: {}, Ψ(√·) concave: {} (worst sample {:.2e})",
            report.hit_integrable, report.monotone, report.concave_half, report.worst_violation
        );
    }
    Ok(())
}
