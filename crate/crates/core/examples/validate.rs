//! The self-check suite behind `levy-spectral validate`, for one family.
//!
//! cargo run --release --example validate -- rel:alpha=1.5,m=1

use levy_spectral::cli::{validate_family, Status};
use levy_spectral::{LevyExponent, QuadratureConfig};

fn main() -> levy_spectral::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "stable:alpha=1.5".into());
    let exp: LevyExponent = spec.parse()?;
    let checks = validate_family(&exp, &QuadratureConfig::default());
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    println!("{} checks, {failed} failed", checks.len());
    Ok(())
}
