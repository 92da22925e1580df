//! Transition density of the process killed at 0 against the free one.
//!
//! cargo run --release --example killed_density

use levy_spectral::kernels::{killed_density, killed_kernel_grid};
use levy_spectral::{LevyExponent, QuadratureConfig, RealGrid};

fn main() -> levy_spectral::Result<()> {
    let cfg = QuadratureConfig::default();

    let brownian = LevyExponent::brownian();
    let exact = (1.0 - (-1f64).exp()) / (4.0 * std::f64::consts::PI).sqrt();
    let got = killed_density(&brownian, 1.0, 1.0, 1.0, &cfg)?;
    println!("Brownian, t = 1, x = y = 1: {got:.10} (reflection principle {exact:.10})");

    let exp = LevyExponent::stable(1.5)?;
    let x = RealGrid::linear(-2.0, 2.0, 9)?;
    let y = RealGrid::from_points(vec![0.5, 1.0, 2.0])?;
    let k = killed_kernel_grid(&exp, 1.0, &x, &y, &cfg)?;
    println!("{exp}, t = 1 (killed / free), error bound {:.1e}", k.error);
    print!("{:>6}", "x\\y");
    for yj in y.iter() {
        print!("{yj:>22}");
    }
    println!();
    for (i, xi) in x.iter().enumerate() {
        print!("{xi:>6.2}");
        for j in 0..y.len() {
            print!("{:>11.6} /{:>9.6}", k.values[i][j], k.free_values[i][j]);
        }
        println!();
    }
    println!("largest violation of 0 ≤ killed ≤ free: {:.1e}", k.domination_violation());
    Ok(())
}
