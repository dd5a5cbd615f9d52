//! Exact operator images of polynomial-exponential sources and the
//! truncation order they imply.

use boundary_particle::cli::config::{benchmark_problem, sigma_family};
use boundary_particle::operator::{apply_operator, operator_power, PolyExpFunction};

fn main() -> boundary_particle::Result<()> {
    for sigma in [0.5, 1.0, 2.0] {
        let params = sigma_family(sigma)?;
        let problem = benchmark_problem(&params, sigma)?;
        println!("sigma = {sigma}");
        println!("  u      = {:?}", problem.exact.as_ref().map(|e| e.terms()));
        println!("  f      = {:?}", problem.source.terms());
        println!(
            "  L f    = {:?}",
            apply_operator(&params, &problem.source)?.terms()
        );
        println!(
            "  L^2 f is zero: {}",
            operator_power(&params, &problem.source, 2)?.is_zero()
        );
    }

    // a source whose images never vanish: the truncation must be capped
    let params = sigma_family(1.0)?;
    let f = PolyExpFunction::term(1.0, 0, 0, [0.3, 0.0]);
    for j in 0..4 {
        let g = operator_power(&params, &f, j)?;
        println!("L^{j} e^(0.3x) at (1,0) = {:.6e}", g.evaluate([1.0, 0.0]));
    }
    Ok(())
}
