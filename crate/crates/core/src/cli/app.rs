use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};

use super::checks::{run_kernel_checks, CheckOutcome};
use super::config::CaseConfig;
use super::run::{emit_report, run_case, CaseReport, ReportPaths};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "bpm",
    version,
    about = "Boundary particle solver for steady convection-diffusion"
)]
pub struct Cli {
    /// Directory for report files.
    #[arg(long, global = true, default_value = ".")]
    pub output_dir: PathBuf,
    /// Seed for randomized invariant sampling.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Format of the summary printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one case with a single knot count.
    Solve { config: PathBuf },
    /// Run a case over its list of knot counts.
    Sweep { config: PathBuf },
    /// Run the special-function and kernel invariant suite.
    KernelCheck,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.3e}"))
}

pub fn render_report(report: &CaseReport, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(report)
                .map_err(|e| Error::Evaluation(e.to_string()))?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("knots,ok,truncation_order,rcond,l2_error,max_error,wall_time_seconds\n");
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{:.6}",
                    r.knots,
                    r.ok,
                    r.truncation_order.map_or(String::new(), |m| m.to_string()),
                    r.rcond.map_or(String::new(), |x| format!("{x:e}")),
                    r.l2_error.map_or(String::new(), |x| format!("{x:e}")),
                    r.max_error.map_or(String::new(), |x| format!("{x:e}")),
                    r.wall_time_seconds
                );
            }
        }
        Format::Table => {
            let p = &report.parameters;
            let _ = writeln!(
                out,
                "case {}: D = {}, v = ({}, {}), kappa = {}, tau = {:.4}, Pe = {:.3}, L_c = {:.4}",
                report.name,
                p.diffusivity,
                p.velocity[0],
                p.velocity[1],
                p.reaction,
                p.tau,
                p.peclet,
                p.scaling_length
            );
            if let Some(s) = p.sigma {
                let _ = writeln!(out, "sigma = {s:.6}");
            }
            let _ = writeln!(
                out,
                "{:>6} {:>3} {:>10} {:>10} {:>10} {:>8}",
                "L", "M", "rcond", "L2 error", "max error", "time[s]"
            );
            for r in &report.records {
                if r.ok {
                    let _ = writeln!(
                        out,
                        "{:>6} {:>3} {:>10} {:>10} {:>10} {:>8.3}",
                        r.knots,
                        r.truncation_order.unwrap_or(0),
                        opt(r.rcond),
                        opt(r.l2_error),
                        opt(r.max_error),
                        r.wall_time_seconds
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "{:>6} failed: {}",
                        r.knots,
                        r.failure.as_deref().unwrap_or("")
                    );
                }
            }
            for w in report.warnings() {
                let _ = writeln!(out, "warning: {w}");
            }
        }
    }
    Ok(out)
}

pub fn render_checks(checks: &[CheckOutcome], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(checks)
                .map_err(|e| Error::Evaluation(e.to_string()))?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("check,samples,worst,tolerance,passed\n");
            for c in checks {
                let _ = writeln!(
                    out,
                    "{},{},{:e},{:e},{}",
                    c.name, c.samples, c.worst, c.tolerance, c.passed
                );
            }
        }
        Format::Table => {
            let _ = writeln!(
                out,
                "{:<26} {:>7} {:>10} {:>10}  result",
                "check", "samples", "worst", "tolerance"
            );
            for c in checks {
                let _ = writeln!(
                    out,
                    "{:<26} {:>7} {:>10.2e} {:>10.1e}  {}",
                    c.name,
                    c.samples,
                    c.worst,
                    c.tolerance,
                    if c.passed { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    Ok(out)
}

fn run_config(cli: &Cli, path: &Path, single: bool) -> Result<bool> {
    let config = CaseConfig::load(path)?;
    if single && config.knots.counts()?.len() != 1 {
        return Err(Error::Config(
            "`solve` needs `knots.count`; use `sweep` for a list".into(),
        ));
    }
    let report = run_case(&config)?;
    emit_report(&report, &ReportPaths::in_dir(&cli.output_dir, &config))?;
    print!("{}", render_report(&report, cli.format)?);
    Ok(report.records.iter().all(|r| r.ok))
}

/// Executes a parsed command line; the exit code is nonzero when any run or
/// check fails.
pub fn execute(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Solve { config } => run_config(cli, config, true),
        Command::Sweep { config } => run_config(cli, config, false),
        Command::KernelCheck => {
            let checks = run_kernel_checks(cli.seed);
            print!("{}", render_checks(&checks, cli.format)?);
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
