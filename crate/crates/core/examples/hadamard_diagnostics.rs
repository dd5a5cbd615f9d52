//! Splits the interpolation matrix into its exponential factor and a bounded
//! remainder and compares reciprocal condition numbers as σ grows.

use boundary_particle::cli::config::{benchmark_problem, sigma_family, BuiltinDomain};
use boundary_particle::geometry::BoundaryData;
use boundary_particle::kernels::KernelFamily;
use boundary_particle::solver::{assemble, hadamard_split};

fn main() -> boundary_particle::Result<()> {
    println!(
        "{:>6} {:>4} {:>11} {:>11} {:>11} {:>10}",
        "sigma", "L", "rcond(Q)", "rcond(Q^)", "rcond(H)", "recon"
    );
    for sigma in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let params = sigma_family(sigma)?;
        let problem = benchmark_problem(&params, sigma)?;
        for knots in [17, 33] {
            let model = BuiltinDomain::Irregular
                .model(BoundaryData::Field(problem.boundary.clone()))?
                .place_knots(knots)?;
            let kernels = KernelFamily::general(params.clone(), 0, model.characteristic_length())?;
            let split = hadamard_split(&assemble(&model, &kernels)?)?;
            println!(
                "{sigma:>6} {knots:>4} {:>11.2e} {:>11.2e} {:>11.2e} {:>10.1e}",
                split.rcond_q, split.rcond_q_hat, split.rcond_h, split.reconstruction_error
            );
        }
    }
    Ok(())
}
