//! Knot-count sweep of the manufactured benchmark on the built-in irregular
//! domain at a prescribed Peclet number, printed as a table.

use boundary_particle::cli::config::CaseConfig;
use boundary_particle::cli::run_case;

fn main() -> boundary_particle::Result<()> {
    let peclet: f64 = std::env::args()
        .nth(1)
        .map_or(24.0, |s| s.parse().expect("Peclet number"));
    let config = CaseConfig::from_toml(&format!(
        r#"
name = "irregular"
[geometry]
type = "builtin"
name = "irregular"
[operator]
peclet = {peclet}
[knots]
sweep = [17, 25, 33, 41, 49]
"#
    ))?;
    let report = run_case(&config)?;
    let p = &report.parameters;
    println!(
        "Pe = {:.1}, sigma = {:.4}, tau = {:.4}, L_c = {:.4}",
        p.peclet,
        p.sigma.unwrap_or(f64::NAN),
        p.tau,
        p.characteristic_length
    );
    println!(
        "{:>4} {:>3} {:>10} {:>10} {:>10}",
        "L", "M", "rcond", "rms", "max"
    );
    for r in &report.records {
        match (r.rcond, r.l2_error, r.max_error) {
            (Some(c), Some(e), Some(m)) => println!(
                "{:>4} {:>3} {c:>10.2e} {e:>10.2e} {m:>10.2e}",
                r.knots,
                r.truncation_order.unwrap_or(0)
            ),
            _ => println!(
                "{:>4} failed: {}",
                r.knots,
                r.failure.as_deref().unwrap_or("")
            ),
        }
    }
    for w in report.warnings() {
        println!("warning: {w}");
    }
    Ok(())
}
