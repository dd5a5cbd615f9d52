//! Case execution, error metrics and report files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryData, BoundaryModel};
use crate::kernels::KernelFamily;
use crate::operator::Point;
use crate::solver::{assemble, evaluate_field, hadamard_split, solve};

use super::config::{CaseConfig, ResolvedProblem};

/// Solutions smaller than this in magnitude are compared in absolute terms.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-3;

/// Per-node error: relative where `|exact| ≥ 0.001`, absolute otherwise.
pub fn node_error(numeric: f64, exact: f64) -> f64 {
    let diff = (numeric - exact).abs();
    if exact.abs() >= RELATIVE_ERROR_FLOOR {
        diff / exact.abs()
    } else {
        diff
    }
}

/// Root-mean-square of the per-node errors.
pub fn error_norm(numeric: &[f64], exact: &[f64]) -> Result<f64> {
    if numeric.is_empty() || numeric.len() != exact.len() {
        return Err(Error::param(format!(
            "error norm needs equal nonempty value lists, got {} and {}",
            numeric.len(),
            exact.len()
        )));
    }
    let sum: f64 = numeric
        .iter()
        .zip(exact)
        .map(|(u, e)| node_error(*u, *e).powi(2))
        .sum();
    Ok((sum / numeric.len() as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterSummary {
    pub diffusivity: f64,
    pub velocity: [f64; 2],
    pub reaction: f64,
    pub tau: f64,
    pub sigma: Option<f64>,
    pub eta: Option<f64>,
    pub peclet: f64,
    pub characteristic_length: f64,
    pub scaling_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HadamardSummary {
    pub rcond_h: f64,
    pub rcond_q_hat: f64,
    pub rcond_q: f64,
    pub reconstruction_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub knots: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub truncation_order: Option<usize>,
    pub rcond: Option<f64>,
    pub max_exponent: Option<f64>,
    pub rhs_norms: Vec<f64>,
    pub l2_error: Option<f64>,
    pub max_error: Option<f64>,
    pub evaluation_nodes: usize,
    pub wall_time_seconds: f64,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hadamard: Option<HadamardSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub u_numeric: f64,
    pub u_exact: Option<f64>,
    pub error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub parameters: ParameterSummary,
    pub records: Vec<SweepRecord>,
    /// Field samples of the last successful knot count.
    #[serde(skip)]
    pub samples: Vec<FieldSample>,
    pub sample_knots: Option<usize>,
    pub wall_time_seconds: f64,
}

impl CaseReport {
    pub fn warnings(&self) -> impl Iterator<Item = &str> {
        self.records
            .iter()
            .flat_map(|r| r.warnings.iter().map(String::as_str))
    }
}

struct Prepared {
    model: BoundaryModel,
    family: KernelFamily,
    problem: ResolvedProblem,
}

fn prepare(config: &CaseConfig) -> Result<(Prepared, ParameterSummary)> {
    // the Peclet target needs the diameter before the boundary data exists
    let shape = config.geometry.build(BoundaryData::zero())?;
    let length = shape.characteristic_length();
    let op = config.operator.resolve(length)?;
    let problem = config.problem.resolve(&op)?;
    let model = config
        .geometry
        .build(BoundaryData::Field(problem.boundary.clone()))?;
    let scaling_length = config.solver.scaling_length.unwrap_or(length);
    let family = KernelFamily::general(op.params.clone(), 0, scaling_length)?;
    let v = op.params.velocity();
    let summary = ParameterSummary {
        diffusivity: op.params.diffusivity(),
        velocity: [v[0], v[1]],
        reaction: op.params.reaction(),
        tau: op.params.tau(),
        sigma: op.sigma,
        eta: problem.eta,
        peclet: op.params.peclet(length)?,
        characteristic_length: length,
        scaling_length,
    };
    Ok((
        Prepared {
            model,
            family,
            problem,
        },
        summary,
    ))
}

fn run_one(
    prepared: &Prepared,
    config: &CaseConfig,
    knots: usize,
) -> Result<(SweepRecord, Vec<FieldSample>)> {
    let start = Instant::now();
    let model = prepared.model.place_knots(knots)?;
    let system = assemble(&model, &prepared.family)?;
    let solution = solve(
        &system,
        &prepared.problem.source(),
        config.solver.truncation(),
    )?;
    let nodes = model.evaluation_nodes(config.solver.evaluation_nodes)?;
    let samples = nodes
        .iter()
        .map(|p: &Point| {
            let u = evaluate_field(&solution, &system, *p)?;
            let exact = prepared.problem.exact.as_ref().map(|e| e.evaluate(*p));
            Ok(FieldSample {
                x: p[0],
                y: p[1],
                u_numeric: u,
                u_exact: exact,
                error: exact.map(|e| node_error(u, e)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (l2_error, max_error) = match prepared.problem.exact {
        Some(_) => {
            let numeric: Vec<f64> = samples.iter().map(|s| s.u_numeric).collect();
            let exact: Vec<f64> = samples.iter().filter_map(|s| s.u_exact).collect();
            let max = samples.iter().filter_map(|s| s.error).fold(0.0, f64::max);
            (Some(error_norm(&numeric, &exact)?), Some(max))
        }
        None => (None, None),
    };
    let hadamard = if config.solver.hadamard {
        let split = hadamard_split(&system)?;
        Some(HadamardSummary {
            rcond_h: split.rcond_h,
            rcond_q_hat: split.rcond_q_hat,
            rcond_q: split.rcond_q,
            reconstruction_error: split.reconstruction_error,
        })
    } else {
        None
    };
    let diag = solution.diagnostics();
    let record = SweepRecord {
        knots,
        ok: true,
        failure: None,
        truncation_order: Some(solution.truncation_order()),
        rcond: Some(diag.rcond),
        max_exponent: Some(diag.max_exponent),
        rhs_norms: diag.rhs_norms.clone(),
        l2_error,
        max_error,
        evaluation_nodes: samples.len(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        warnings: diag.warnings.clone(),
        hadamard,
    };
    Ok((record, samples))
}

/// Runs every knot count of the case; a failing count is recorded and the
/// sweep continues.
pub fn run_case(config: &CaseConfig) -> Result<CaseReport> {
    let start = Instant::now();
    let counts = config.knots.counts()?;
    let (prepared, parameters) = prepare(config)?;
    let mut records = Vec::with_capacity(counts.len());
    let mut samples = Vec::new();
    let mut sample_knots = None;
    for knots in counts {
        let t = Instant::now();
        match run_one(&prepared, config, knots) {
            Ok((record, s)) => {
                records.push(record);
                samples = s;
                sample_knots = Some(knots);
            }
            Err(e) => records.push(SweepRecord {
                knots,
                ok: false,
                failure: Some(e.to_string()),
                truncation_order: None,
                rcond: None,
                max_exponent: None,
                rhs_norms: Vec::new(),
                l2_error: None,
                max_error: None,
                evaluation_nodes: 0,
                wall_time_seconds: t.elapsed().as_secs_f64(),
                warnings: Vec::new(),
                hadamard: None,
            }),
        }
    }
    Ok(CaseReport {
        name: config.name.clone(),
        parameters,
        records,
        samples,
        sample_knots,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Where the report files go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportPaths {
    pub report: PathBuf,
    pub field: PathBuf,
}

impl ReportPaths {
    pub fn in_dir(dir: &Path, config: &CaseConfig) -> Self {
        ReportPaths {
            report: dir.join(&config.output.report),
            field: dir.join(&config.output.field),
        }
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let io = match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    };
    Error::io(path, io)
}

/// Writes the JSON report and the `x,y,u_numeric,u_exact,error` field table.
pub fn emit_report(report: &CaseReport, paths: &ReportPaths) -> Result<()> {
    for p in [&paths.report, &paths.field] {
        if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::io(&paths.report, std::io::Error::other(e)))?;
    fs::write(&paths.report, json + "\n").map_err(|e| Error::io(&paths.report, e))?;

    let mut w = csv::Writer::from_path(&paths.field).map_err(|e| csv_error(&paths.field, e))?;
    w.write_record(["x", "y", "u_numeric", "u_exact", "error"])
        .map_err(|e| csv_error(&paths.field, e))?;
    let opt = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:e}"));
    for s in &report.samples {
        w.write_record([
            format!("{:e}", s.x),
            format!("{:e}", s.y),
            format!("{:e}", s.u_numeric),
            opt(s.u_exact),
            opt(s.error),
        ])
        .map_err(|e| csv_error(&paths.field, e))?;
    }
    w.flush().map_err(|e| Error::io(&paths.field, e))?;
    Ok(())
}
