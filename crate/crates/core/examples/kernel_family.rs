//! High-order general and fundamental solutions: amplitudes, values along a
//! ray, and the telescoping property checked by finite differences.

use boundary_particle::kernels::{KernelFamily, KernelKind};
use boundary_particle::operator::make_params;

fn main() -> boundary_particle::Result<()> {
    let params = make_params(0.5, &[1.0, -0.5], 2.0, 2)?;
    println!("tau = {:.6}", params.tau());

    let general = KernelFamily::new(params.clone(), KernelKind::General, 3, 0.0)?;
    let fundamental = KernelFamily::new(params.clone(), KernelKind::Fundamental, 3, 0.0)?;
    println!("general amplitudes     {:?}", general.amplitudes());
    println!("fundamental amplitudes {:?}", fundamental.amplitudes());

    println!(
        "\n{:>6} {:>13} {:>13} {:>13}",
        "r", "u_0^#", "u_2^#", "u_1^*"
    );
    let src = [0.0, 0.0];
    for r in [0.05, 0.2, 0.5, 1.0, 2.0] {
        let x = [r / 2f64.sqrt(), r / 2f64.sqrt()];
        println!(
            "{r:>6} {:>13.5e} {:>13.5e} {:>13.5e}",
            general.value(0, &x, &src)?,
            general.value(2, &x, &src)?,
            fundamental.value(1, &x, &src)?
        );
    }

    // L u_m = u_{m-1}, second-order central differences
    let x = [0.6, 0.3];
    let h = 1e-3;
    let u = |p: [f64; 2]| general.value(2, &p, &src).unwrap();
    let d = params.diffusivity();
    let v = params.velocity();
    let c = u(x);
    let (xp, xm, yp, ym) = (
        u([x[0] + h, x[1]]),
        u([x[0] - h, x[1]]),
        u([x[0], x[1] + h]),
        u([x[0], x[1] - h]),
    );
    let lap = (xp + xm + yp + ym - 4.0 * c) / (h * h);
    let grad = [(xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h)];
    let lu = d * lap - v[0] * grad[0] - v[1] * grad[1] - params.reaction() * c;
    println!(
        "\nL u_2^# = {lu:.8e}, u_1^# = {:.8e}",
        general.value(1, &x, &src)?
    );
    Ok(())
}
