//! Case configuration, read from TOML.
//!
//! ```toml
//! name = "table-analog"
//!
//! [geometry]
//! type = "builtin"          # or "polygon" / "segments"
//! name = "irregular"        # or "unit_square"
//!
//! [operator]
//! peclet = 24.0             # or sigma = 1.0, or diffusivity/velocity/reaction
//!
//! [problem]
//! type = "benchmark"        # or "custom"
//!
//! [knots]
//! sweep = [25, 33, 41, 49]  # or count = 48
//!
//! [solver]
//! evaluation_nodes = 460
//! ```

use std::f64::consts::SQRT_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BcKind, BoundaryData, BoundaryModel, BoundarySegment, Curve};
use crate::operator::{
    apply_operator, make_params, OperatorParams, Point, PolyExpFunction, Source,
};
use crate::solver::{Truncation, DEFAULT_MAX_ORDER, DEFAULT_TRUNCATION_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub geometry: GeometryConfig,
    pub operator: OperatorConfig,
    #[serde(default)]
    pub problem: ProblemConfig,
    pub knots: KnotConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_name() -> String {
    "case".into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BcName {
    Dirichlet,
    Neumann,
}

impl From<BcName> for BcKind {
    fn from(b: BcName) -> Self {
        match b {
            BcName::Dirichlet => BcKind::Dirichlet,
            BcName::Neumann => BcKind::Neumann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinDomain {
    /// Six-sided polygon with Neumann edges on `x = 0` and `y = 0`.
    Irregular,
    /// `[0, 1]²` with Neumann edges on `x = 0` and `y = 0`.
    UnitSquare,
}

impl BuiltinDomain {
    pub fn vertices(self) -> Vec<Point> {
        match self {
            BuiltinDomain::Irregular => vec![
                [0.0, 0.0],
                [2.0, 0.0],
                [2.5, 0.8],
                [1.5, 1.6],
                [0.5, 1.2],
                [0.0, 1.0],
            ],
            BuiltinDomain::UnitSquare => vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        }
    }

    pub fn conditions(self) -> Vec<BcKind> {
        let n = self.vertices().len();
        (0..n)
            .map(|i| {
                if i == 0 || i == n - 1 {
                    BcKind::Neumann
                } else {
                    BcKind::Dirichlet
                }
            })
            .collect()
    }

    pub fn model(self, data: BoundaryData) -> Result<BoundaryModel> {
        let edges = self
            .conditions()
            .into_iter()
            .map(|k| (k, data.clone()))
            .collect();
        BoundaryModel::polygon(&self.vertices(), edges)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryConfig {
    Builtin {
        name: BuiltinDomain,
    },
    /// Counterclockwise vertices; `bc[i]` applies to the edge leaving vertex `i`.
    Polygon {
        vertices: Vec<Point>,
        bc: Vec<BcName>,
    },
    Segments {
        segments: Vec<SegmentConfig>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentConfig {
    Line {
        start: Point,
        end: Point,
        bc: BcName,
    },
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
        bc: BcName,
    },
}

impl GeometryConfig {
    pub fn build(&self, data: BoundaryData) -> Result<BoundaryModel> {
        match self {
            GeometryConfig::Builtin { name } => name.model(data),
            GeometryConfig::Polygon { vertices, bc } => BoundaryModel::polygon(
                vertices,
                bc.iter().map(|b| ((*b).into(), data.clone())).collect(),
            ),
            GeometryConfig::Segments { segments } => BoundaryModel::new(
                segments
                    .iter()
                    .map(|s| {
                        let (curve, bc) = match *s {
                            SegmentConfig::Line { start, end, bc } => (Curve::line(start, end), bc),
                            SegmentConfig::Arc {
                                center,
                                radius,
                                start_angle,
                                sweep,
                                bc,
                            } => (Curve::arc(center, radius, start_angle, sweep), bc),
                        };
                        BoundarySegment::new(curve, bc.into(), data.clone())
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        }
    }
}

/// Exactly one of: `sigma`, `peclet`, or the raw triple.
///
/// `sigma` and `peclet` select the one-parameter family `D = 1`,
/// `v = (−σ, −σ)`, `κ = 3σ²/2`; a Peclet target fixes `σ = Pe·D / (√2·L_c)`
/// with `L_c` the domain diameter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peclet: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diffusivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reaction: Option<f64>,
}

/// Operator parameters after resolving the configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedOperator {
    pub params: OperatorParams,
    /// Set for the one-parameter family.
    pub sigma: Option<f64>,
}

pub fn sigma_family(sigma: f64) -> Result<OperatorParams> {
    make_params(1.0, &[-sigma, -sigma], 1.5 * sigma * sigma, 2)
}

/// `σ = Pe·D / (√2·L_c)` for the one-parameter family (`D = 1`).
pub fn sigma_for_peclet(peclet: f64, length: f64) -> f64 {
    peclet / (SQRT_2 * length)
}

impl OperatorConfig {
    pub fn resolve(&self, characteristic_length: f64) -> Result<ResolvedOperator> {
        let raw = self.diffusivity.is_some() || self.velocity.is_some() || self.reaction.is_some();
        let chosen = usize::from(self.sigma.is_some())
            + usize::from(self.peclet.is_some())
            + usize::from(raw);
        if chosen != 1 {
            return Err(Error::Config(
                "operator needs exactly one of `sigma`, `peclet`, or diffusivity/velocity/reaction"
                    .into(),
            ));
        }
        let positive = |x: f64, what: &str| {
            if x > 0.0 && x.is_finite() {
                Ok(x)
            } else {
                Err(Error::Config(format!("{what} must be positive, got {x}")))
            }
        };
        if let Some(s) = self.sigma {
            let s = positive(s, "sigma")?;
            return Ok(ResolvedOperator {
                params: sigma_family(s)?,
                sigma: Some(s),
            });
        }
        if let Some(pe) = self.peclet {
            let s = sigma_for_peclet(positive(pe, "peclet")?, characteristic_length);
            return Ok(ResolvedOperator {
                params: sigma_family(s)?,
                sigma: Some(s),
            });
        }
        let (Some(d), Some(v), Some(k)) = (self.diffusivity, self.velocity, self.reaction) else {
            return Err(Error::Config(
                "raw operator needs all of diffusivity, velocity and reaction".into(),
            ));
        };
        Ok(ResolvedOperator {
            params: make_params(d, &v, k, 2)?,
            sigma: None,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    /// Exact solution `x² e^{−η(x+y)}`, `η = (σ + √(σ² + 2κ))/2`, with the
    /// source obtained by one operator application. Needs `sigma` or `peclet`.
    #[default]
    Benchmark,
    /// Functions given as term lists `[{ c, p, q, a = [ax, ay] }, …]`, each
    /// term being `c·x^p·y^q·e^{ax·x + ay·y}`.
    Custom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<PolyExpFunction>,
        /// Defaults to `L{exact}` when `exact` is given, else zero.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        source: Option<PolyExpFunction>,
        /// Field whose trace (or normal derivative) gives the boundary data;
        /// defaults to `exact`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        boundary: Option<PolyExpFunction>,
    },
}

/// Source, exact solution and boundary field of a case.
#[derive(Debug, Clone)]
pub struct ResolvedProblem {
    pub source: PolyExpFunction,
    pub exact: Option<PolyExpFunction>,
    pub boundary: PolyExpFunction,
    pub eta: Option<f64>,
}

impl ResolvedProblem {
    pub fn source(&self) -> Source {
        Source::Analytic(self.source.clone())
    }
}

/// `η` of the benchmark exact solution.
pub fn benchmark_eta(sigma: f64, reaction: f64) -> f64 {
    0.5 * (sigma + (sigma * sigma + 2.0 * reaction).sqrt())
}

/// Exact benchmark solution `x² e^{−η(x+y)}` and its source.
pub fn benchmark_problem(params: &OperatorParams, sigma: f64) -> Result<ResolvedProblem> {
    let eta = benchmark_eta(sigma, params.reaction());
    let exact = PolyExpFunction::term(1.0, 2, 0, [-eta, -eta]);
    Ok(ResolvedProblem {
        source: apply_operator(params, &exact)?,
        boundary: exact.clone(),
        exact: Some(exact),
        eta: Some(eta),
    })
}

impl ProblemConfig {
    pub fn resolve(&self, op: &ResolvedOperator) -> Result<ResolvedProblem> {
        match self {
            ProblemConfig::Benchmark => {
                let sigma = op.sigma.ok_or_else(|| {
                    Error::Config(
                        "benchmark problem needs `sigma` or `peclet` in [operator]".into(),
                    )
                })?;
                benchmark_problem(&op.params, sigma)
            }
            ProblemConfig::Custom {
                exact,
                source,
                boundary,
            } => {
                let boundary = boundary.clone().or_else(|| exact.clone()).ok_or_else(|| {
                    Error::Config("custom problem needs `boundary` or `exact`".into())
                })?;
                let source = match (source, exact) {
                    (Some(s), _) => s.clone(),
                    (None, Some(e)) => apply_operator(&op.params, e)?,
                    (None, None) => PolyExpFunction::zero(),
                };
                Ok(ResolvedProblem {
                    source,
                    exact: exact.clone(),
                    boundary,
                    eta: None,
                })
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Strictly increasing knot counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<usize>>,
}

impl KnotConfig {
    pub fn counts(&self) -> Result<Vec<usize>> {
        match (self.count, &self.sweep) {
            (Some(c), None) => Ok(vec![c]),
            (None, Some(s)) => {
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Config(
                        "knot sweep must be strictly increasing".into(),
                    ));
                }
                Ok(s.clone())
            }
            _ => Err(Error::Config(
                "[knots] needs exactly one of `count` or `sweep`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Fixed truncation order; adaptive when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<usize>,
    #[serde(default = "default_tolerance")]
    pub truncation_tolerance: f64,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    /// Defaults to the domain diameter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling_length: Option<f64>,
    #[serde(default = "default_nodes")]
    pub evaluation_nodes: usize,
    /// Also record the Hadamard split diagnostics per knot count.
    #[serde(default)]
    pub hadamard: bool,
}

fn default_tolerance() -> f64 {
    DEFAULT_TRUNCATION_TOLERANCE
}

fn default_max_order() -> usize {
    DEFAULT_MAX_ORDER
}

fn default_nodes() -> usize {
    460
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            truncation_order: None,
            truncation_tolerance: default_tolerance(),
            max_order: default_max_order(),
            scaling_length: None,
            evaluation_nodes: default_nodes(),
            hadamard: false,
        }
    }
}

impl SolverConfig {
    pub fn truncation(&self) -> Truncation {
        match self.truncation_order {
            Some(m) => Truncation::Fixed(m),
            None => Truncation::Adaptive {
                tolerance: self.truncation_tolerance,
                max_order: self.max_order,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_report")]
    pub report: String,
    #[serde(default = "default_field")]
    pub field: String,
}

fn default_report() -> String {
    "report.json".into()
}

fn default_field() -> String {
    "field.csv".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            report: default_report(),
            field: default_field(),
        }
    }
}

impl CaseConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: CaseConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.knots.counts()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}
