//! Exponentially scaled modified Bessel functions across the argument range,
//! including arguments where the unscaled values overflow.

use boundary_particle::specfun::{bessel_i, bessel_i_scaled, bessel_k_scaled, BesselOrder};

fn main() -> boundary_particle::Result<()> {
    let orders = [
        BesselOrder::integer(0),
        BesselOrder::integer(1),
        BesselOrder::half_odd(0),
        BesselOrder::integer(3),
    ];
    println!(
        "{:>6} {:>9} {:>14} {:>14} {:>14}",
        "nu", "z", "e^-z I_nu", "e^z K_nu", "I_nu"
    );
    for nu in orders {
        for z in [1e-3, 0.5, 5.0, 50.0, 800.0] {
            let i = bessel_i_scaled(nu, z)?;
            let k = bessel_k_scaled(nu, z)?;
            let raw = bessel_i(nu, z).map_or("overflow".to_string(), |v| format!("{v:.6e}"));
            println!("{:>6} {z:>9} {i:>14.6e} {k:>14.6e} {raw:>14}", nu.value());
        }
    }

    // Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/z holds in scaled form
    let z = 123.4;
    let nu = BesselOrder::integer(2);
    let next = nu.offset(1);
    let w = bessel_i_scaled(nu, z)? * bessel_k_scaled(next, z)?
        + bessel_i_scaled(next, z)? * bessel_k_scaled(nu, z)?;
    println!("\nz * W(z = {z}) = {:.16}", z * w);
    Ok(())
}
