//! Homogeneous problem on the unit square with an exponential exact solution,
//! assembled and solved through the library API directly.

use boundary_particle::cli::config::{sigma_family, BuiltinDomain};
use boundary_particle::geometry::{BoundaryData, Location};
use boundary_particle::kernels::KernelFamily;
use boundary_particle::operator::{PolyExpFunction, Source};
use boundary_particle::solver::{assemble, evaluate_field, solve, Truncation};

fn main() -> boundary_particle::Result<()> {
    let sigma = 1.0;
    let params = sigma_family(sigma)?;
    // root of D λ² + σ λ − κ = 0
    let lambda = (-sigma + (sigma * sigma + 4.0 * params.reaction()).sqrt()) / 2.0;
    let exact = PolyExpFunction::exponential([lambda, 0.0]);

    for knots in [16, 24, 32, 40] {
        let model = BuiltinDomain::UnitSquare
            .model(BoundaryData::Field(exact.clone()))?
            .place_knots(knots)?;
        let kernels = KernelFamily::general(params.clone(), 0, model.characteristic_length())?;
        let system = assemble(&model, &kernels)?;
        let solution = solve(&system, &Source::zero(), Truncation::default())?;
        let mut worst: f64 = 0.0;
        for p in model.evaluation_nodes(200)? {
            if model.point_in_domain(p) == Location::Inside {
                let u = evaluate_field(&solution, &system, p)?;
                worst = worst.max(((u - exact.evaluate(p)) / exact.evaluate(p)).abs());
            }
        }
        println!(
            "L = {knots:>2}: rcond {:.2e}, max interior relative error {worst:.2e}",
            system.rcond()
        );
    }
    Ok(())
}
