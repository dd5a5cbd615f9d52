//! A half-disk bounded by a line and an arc, with a Neumann base, a custom
//! exact solution and a source derived from it.

use std::f64::consts::PI;

use boundary_particle::cli::error_norm;
use boundary_particle::geometry::{
    BcKind, BoundaryData, BoundaryModel, BoundarySegment, Curve, Location,
};
use boundary_particle::kernels::KernelFamily;
use boundary_particle::operator::{apply_operator, make_params, PolyExpFunction, Source};
use boundary_particle::solver::{assemble, evaluate_field, solve, Truncation};

fn main() -> boundary_particle::Result<()> {
    let params = make_params(1.0, &[1.5, 0.5], 1.0, 2)?;
    // u = x y e^{2x}; D a² − v_x a − κ = 0 at a = 2, so the source's operator
    // powers terminate
    let exact = PolyExpFunction::term(1.0, 1, 1, [2.0, 0.0]);
    let source = apply_operator(&params, &exact)?;
    let data = BoundaryData::Field(exact.clone());

    let model = BoundaryModel::new(vec![
        BoundarySegment::new(
            Curve::line([-1.0, 0.0], [1.0, 0.0]),
            BcKind::Neumann,
            data.clone(),
        )?,
        BoundarySegment::new(
            Curve::arc([0.0, 0.0], 1.0, 0.0, PI),
            BcKind::Dirichlet,
            data,
        )?,
    ])?;
    println!(
        "perimeter {:.6}, area {:.6}, diameter {:.6}",
        model.perimeter(),
        model.area(),
        model.characteristic_length()
    );

    for knots in [15, 23, 31] {
        let placed = model.place_knots(knots)?;
        let kernels = KernelFamily::general(params.clone(), 0, placed.characteristic_length())?;
        let system = assemble(&placed, &kernels)?;
        let solution = solve(
            &system,
            &Source::Analytic(source.clone()),
            Truncation::default(),
        )?;
        let nodes: Vec<_> = placed
            .evaluation_nodes(300)?
            .into_iter()
            .filter(|p| placed.point_in_domain(*p) == Location::Inside)
            .collect();
        let numeric = nodes
            .iter()
            .map(|p| evaluate_field(&solution, &system, *p))
            .collect::<boundary_particle::Result<Vec<_>>>()?;
        let expected: Vec<f64> = nodes.iter().map(|p| exact.evaluate(*p)).collect();
        println!(
            "L = {knots:>2}: M = {}, rcond {:.2e}, rms error {:.2e}",
            solution.truncation_order(),
            system.rcond(),
            error_norm(&numeric, &expected)?
        );
    }
    Ok(())
}
