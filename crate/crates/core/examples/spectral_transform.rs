//! The generalized Fourier transform Πf = (Π_even f, Π_odd f), its inverse and the
//! diagonalization of the killed semigroup.
//!
//! cargo run --release --example spectral_transform

use std::f64::consts::PI;

use levy_spectral::spectral::{pi_star, transform, verify_diagonalization, verify_parseval};
use levy_spectral::{GridFunction, LevyExponent, QuadratureConfig, RealGrid};

fn bump(a: f64, b: f64) -> GridFunction {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    GridFunction::from_fn(RealGrid::linear(a, b, 201).expect("grid"), move |x| {
        let u = (x - c) / r;
        if u.abs() < 1.0 {
            (-1.0 / (1.0 - u * u)).exp()
        } else {
            0.0
        }
    })
}

fn main() -> levy_spectral::Result<()> {
    let cfg = QuadratureConfig::default();
    let exp = LevyExponent::stable(1.5)?;

    for (a, b) in [(0.5, 1.0), (1.0, 1.0), (1.0, 3.0)] {
        let (got, want, err) = verify_parseval(&exp, a, b, &cfg)?;
        println!("Parseval ξ = ({a}, {b}): {got:.10} vs 2π/(ξ₁+ξ₂) = {want:.10} ({err:.1e})");
    }

    let f = bump(0.5, 2.5);
    let lambdas = RealGrid::linear(0.0, 40.0, 801)?;
    let positive = RealGrid::from_points(lambdas.points()[1..].to_vec())?;
    let t = transform(&exp, &f, &positive, &cfg)?;
    for k in [0, 19, 39, 99] {
        println!("λ = {:>5.2}: Π_even f = {:>11.3e}, Π_odd f = {:>11.3e}", positive.points()[k], t.even_part[k], t.odd_part[k]);
    }

    let pad = |v: &[f64]| {
        let mut out = vec![0.0];
        out.extend_from_slice(v);
        GridFunction::new(lambdas.clone(), out, vec![0.0; lambdas.len()])
    };
    let x = RealGrid::linear(-1.0, 3.0, 9)?;
    let back = pi_star(&exp, &pad(&t.even_part), &pad(&t.odd_part), &x, &cfg)?;
    println!("round trip (1/π)Π*Πf against f:");
    for (xi, b) in x.iter().zip(&back.values) {
        println!("  x = {xi:>5.2}: {:>11.7} vs {:>11.7}", b / PI, f.interpolate(xi));
    }

    let l = RealGrid::from_points(vec![0.5, 1.0, 2.0])?;
    let dev = verify_diagonalization(&exp, &bump(1.0, 3.0), 1.0, &l, &cfg)?;
    println!("max |ΠP_t f − e^(−tΨ)Πf| at t = 1: {dev:.1e}");
    Ok(())
}
