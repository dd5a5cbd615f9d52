//! Boundary particle collocation: one interpolation matrix built from scaled
//! order-0 general solutions, one LU factorization, and a descending sweep
//! over orders `M, M−1, …, 0` that recovers the particular part of the
//! solution from higher-order general solutions.
//!
//! Coefficients are stored scaled (`β̃ = e^{τL_c} β`) and always paired with
//! scaled kernels (`e^{−τL_c} u_m^#`), so every product equals its unscaled
//! counterpart while no intermediate leaves the `f64` range.

use crate::error::{Error, Result};
use crate::geometry::{BcKind, BoundaryModel};
use crate::kernels::{KernelFamily, KernelKind, EXPONENT_LIMIT};
use crate::linalg::{LuFactorization, Matrix};
use crate::operator::{Point, PreparedSource, Source};

/// Systems with an estimated reciprocal condition number below this value
/// carry a warning; results are still returned.
pub const RCOND_WARNING: f64 = 1e-15;

pub const DEFAULT_TRUNCATION_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ORDER: usize = 10;

/// Highest operator power tried adaptively for finite-difference sources,
/// whose cost grows as `5^j`.
pub const SAMPLED_POWER_CAP: usize = 3;

#[derive(Debug, Clone)]
pub struct BpmSystem {
    matrix: Matrix,
    lu: LuFactorization,
    model: BoundaryModel,
    kernels: KernelFamily,
    rcond: f64,
    max_exponent: f64,
    warnings: Vec<String>,
}

impl BpmSystem {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn lu(&self) -> &LuFactorization {
        &self.lu
    }

    pub fn model(&self) -> &BoundaryModel {
        &self.model
    }

    pub fn kernels(&self) -> &KernelFamily {
        &self.kernels
    }

    pub fn rcond(&self) -> f64 {
        self.rcond
    }

    /// Largest combined exponent met while filling the matrix.
    pub fn max_exponent(&self) -> f64 {
        self.max_exponent
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn knot_count(&self) -> usize {
        self.model.knots().len()
    }

    /// The system's kernel family, extended if needed to reach `order`.
    pub fn kernels_up_to(&self, order: usize) -> Result<KernelFamily> {
        if order <= self.kernels.max_order() {
            return Ok(self.kernels.clone());
        }
        Ok(KernelFamily::new(
            self.kernels.params().clone(),
            KernelKind::General,
            order,
            self.kernels.scaling_length(),
        )?
        .with_leading_amplitude(self.kernels.amplitudes()[0]))
    }
}

/// Fills the interpolation matrix and factorizes it once.
pub fn assemble(model: &BoundaryModel, kernels: &KernelFamily) -> Result<BpmSystem> {
    let knots = model.knots();
    if knots.len() < 4 {
        return Err(Error::param(format!(
            "need at least 4 placed knots, got {}",
            knots.len()
        )));
    }
    if kernels.kind() != KernelKind::General {
        return Err(Error::param(
            "collocation on the physical boundary needs general (nonsingular) kernels",
        ));
    }
    if kernels.dimension() != 2 {
        return Err(Error::param(
            "boundary models are planar; kernels must be 2D",
        ));
    }
    let l = knots.len();
    let mut matrix = Matrix::zeros(l, l);
    let mut max_exponent = f64::NEG_INFINITY;
    for (i, ki) in knots.iter().enumerate() {
        for (k, kk) in knots.iter().enumerate() {
            max_exponent = max_exponent.max(kernels.combined_exponent(&ki.position, &kk.position)?);
            matrix[(i, k)] = match ki.bc_kind {
                BcKind::Dirichlet => kernels.value(0, &ki.position, &kk.position)?,
                BcKind::Neumann => {
                    kernels.normal_derivative(0, &ki.position, &kk.position, &ki.normal)?
                }
            };
        }
    }
    let lu = LuFactorization::new(&matrix)?;
    let rcond = lu.rcond();
    let mut warnings = Vec::new();
    if rcond < RCOND_WARNING {
        warnings.push(format!(
            "interpolation matrix is ill-conditioned: rcond = {rcond:.3e} < {RCOND_WARNING:.0e}; \
             expect loss of accuracy"
        ));
    }
    Ok(BpmSystem {
        matrix,
        lu,
        model: model.clone(),
        kernels: kernels.clone(),
        rcond,
        max_exponent,
        warnings,
    })
}

/// Right-hand side of the order-`order` collocation equations.
///
/// `higher` holds the already solved scaled coefficients for orders
/// `order + 1 ..= truncation`, in that order.
pub fn build_rhs(
    system: &BpmSystem,
    order: usize,
    truncation: usize,
    source: &PreparedSource,
    higher: &[Vec<f64>],
) -> Result<Vec<f64>> {
    if order > truncation {
        return Err(Error::param(format!(
            "order {order} exceeds truncation order {truncation}"
        )));
    }
    if higher.len() != truncation - order {
        return Err(Error::State(format!(
            "order {order} needs {} higher coefficient sets, got {}",
            truncation - order,
            higher.len()
        )));
    }
    let knots = system.model.knots();
    if let Some(h) = higher.iter().find(|h| h.len() != knots.len()) {
        return Err(Error::State(format!(
            "coefficient vector has length {}, expected {}",
            h.len(),
            knots.len()
        )));
    }
    let family = system.kernels_up_to(truncation)?;
    let mut rhs = Vec::with_capacity(knots.len());
    for (i, ki) in knots.iter().enumerate() {
        let x = ki.position;
        let mut b = if order == 0 {
            system.model.knot_data(i)
        } else {
            match ki.bc_kind {
                BcKind::Dirichlet => source.value(order - 1, x),
                BcKind::Neumann => {
                    let g = source.gradient(order - 1, x);
                    g[0] * ki.normal[0] + g[1] * ki.normal[1]
                }
            }
        };
        for (offset, beta) in higher.iter().enumerate() {
            let kernel_order = offset + 1;
            for (kk, coeff) in knots.iter().zip(beta) {
                if *coeff == 0.0 {
                    continue;
                }
                let k = match ki.bc_kind {
                    BcKind::Dirichlet => family.value(kernel_order, &x, &kk.position)?,
                    BcKind::Neumann => {
                        family.normal_derivative(kernel_order, &x, &kk.position, &ki.normal)?
                    }
                };
                b -= coeff * k;
            }
        }
        if !b.is_finite() {
            return Err(Error::Evaluation(format!(
                "right-hand side of order {order} at knot {i}"
            )));
        }
        rhs.push(b);
    }
    Ok(rhs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    Fixed(usize),
    /// Smallest `M` with `max |L^M f| ≤ tolerance · max |f|` over the knots.
    Adaptive {
        tolerance: f64,
        max_order: usize,
    },
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Adaptive {
            tolerance: DEFAULT_TRUNCATION_TOLERANCE,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveDiagnostics {
    pub rcond: f64,
    pub max_exponent: f64,
    /// Infinity norm of the right-hand side for each order `0..=M`.
    pub rhs_norms: Vec<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct BpmSolution {
    coefficients: Vec<Vec<f64>>,
    truncation: usize,
    kernels: KernelFamily,
    diagnostics: SolveDiagnostics,
}

impl BpmSolution {
    /// Scaled coefficient vectors `β̃^0 ..= β̃^M`.
    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coefficients
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation
    }

    pub fn scaling_length(&self) -> f64 {
        self.kernels.scaling_length()
    }

    pub fn kernels(&self) -> &KernelFamily {
        &self.kernels
    }

    pub fn diagnostics(&self) -> &SolveDiagnostics {
        &self.diagnostics
    }
}

fn knot_max(source: &PreparedSource, j: usize, points: &[Point]) -> f64 {
    points
        .iter()
        .map(|p| source.value(j, *p).abs())
        .fold(0.0, f64::max)
}

fn choose_truncation(
    source: &Source,
    system: &BpmSystem,
    policy: Truncation,
    warnings: &mut Vec<String>,
) -> Result<(usize, PreparedSource)> {
    let params = system.kernels.params();
    match policy {
        Truncation::Fixed(m) => Ok((m, source.prepare(params, m)?)),
        Truncation::Adaptive {
            tolerance,
            max_order,
        } => {
            if !(tolerance >= 0.0) {
                return Err(Error::param("truncation tolerance must be nonnegative"));
            }
            let cap = match source {
                Source::Analytic(_) => max_order,
                Source::Sampled(_) => max_order.min(SAMPLED_POWER_CAP),
            };
            let prepared = source.prepare(params, cap)?;
            let points: Vec<Point> = system.model.knots().iter().map(|k| k.position).collect();
            let base = knot_max(&prepared, 0, &points);
            for m in 0..=cap {
                if prepared.vanishes(m) {
                    return Ok((m, prepared));
                }
                if base > 0.0 && knot_max(&prepared, m, &points) <= tolerance * base {
                    return Ok((m, prepared));
                }
                if base == 0.0 && matches!(source, Source::Sampled(_)) {
                    return Ok((0, prepared));
                }
            }
            warnings.push(format!(
                "truncation tolerance {tolerance:.1e} not met by order {cap}; particular part is approximate"
            ));
            Ok((cap, prepared))
        }
    }
}

/// Runs the descending order sweep against the single factorization.
pub fn solve(system: &BpmSystem, source: &Source, truncation: Truncation) -> Result<BpmSolution> {
    let mut warnings = system.warnings.clone();
    let (m_top, prepared) = choose_truncation(source, system, truncation, &mut warnings)?;
    let kernels = system.kernels_up_to(m_top)?;
    // higher[0] holds the lowest solved order
    let mut higher: Vec<Vec<f64>> = Vec::with_capacity(m_top + 1);
    let mut rhs_norms = vec![0.0; m_top + 1];
    for m in (0..=m_top).rev() {
        let rhs = build_rhs(system, m, m_top, &prepared, &higher)?;
        rhs_norms[m] = rhs.iter().fold(0.0, |a: f64, b| a.max(b.abs()));
        let beta = system.lu.solve(&rhs);
        if beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::Evaluation(format!("coefficients of order {m}")));
        }
        higher.insert(0, beta);
    }
    Ok(BpmSolution {
        coefficients: higher,
        truncation: m_top,
        kernels,
        diagnostics: SolveDiagnostics {
            rcond: system.rcond,
            max_exponent: system.max_exponent,
            rhs_norms,
            warnings,
        },
    })
}

/// `u(x) = Σ_m Σ_k β̃_k^m e^{−τL_c} u_m^#(x − x_k)`.
pub fn evaluate_field(solution: &BpmSolution, system: &BpmSystem, x: Point) -> Result<f64> {
    let knots = system.model.knots();
    let mut u = 0.0;
    for (m, beta) in solution.coefficients.iter().enumerate() {
        for (k, coeff) in knots.iter().zip(beta) {
            if *coeff != 0.0 {
                u += coeff * solution.kernels.value(m, &x, &k.position)?;
            }
        }
    }
    if !u.is_finite() {
        return Err(Error::Evaluation(format!("field at ({}, {})", x[0], x[1])));
    }
    Ok(u)
}

/// `Q = H ∘ Q̂` with `H_ij = e^{τ (r_ij − L_c)}`.
///
/// `Q` already carries the `e^{−τ L_c}` scaling, so putting it into `H` keeps
/// `Q̂` independent of `L_c` and representable when `τ L_c` is large.
#[derive(Debug, Clone)]
pub struct HadamardSplit {
    pub h: Matrix,
    pub q_hat: Matrix,
    /// `0` when the factor is exactly singular.
    pub rcond_h: f64,
    pub rcond_q_hat: f64,
    pub rcond_q: f64,
    /// Largest `|H_ij Q̂_ij − Q_ij| / |Q_ij|` over nonzero entries.
    pub reconstruction_error: f64,
}

fn rcond_or_zero(m: &Matrix) -> f64 {
    LuFactorization::new(m).map_or(0.0, |lu| lu.rcond())
}

pub fn hadamard_split(system: &BpmSystem) -> Result<HadamardSplit> {
    let knots = system.model.knots();
    let tau = system.kernels.params().tau();
    let shift = tau * system.kernels.scaling_length();
    let l = knots.len();
    let mut h = Matrix::zeros(l, l);
    for (i, ki) in knots.iter().enumerate() {
        for (j, kj) in knots.iter().enumerate() {
            let r = (ki.position[0] - kj.position[0]).hypot(ki.position[1] - kj.position[1]);
            let e = tau * r - shift;
            if e > EXPONENT_LIMIT {
                return Err(Error::Overflow {
                    exponent: e,
                    limit: EXPONENT_LIMIT,
                });
            }
            h[(i, j)] = e.exp();
        }
    }
    let q = &system.matrix;
    let q_hat = Matrix::from_fn(l, l, |i, j| q[(i, j)] / h[(i, j)]);
    let mut reconstruction_error: f64 = 0.0;
    for i in 0..l {
        for j in 0..l {
            if q[(i, j)] != 0.0 {
                let back = h[(i, j)] * q_hat[(i, j)];
                reconstruction_error =
                    reconstruction_error.max((back - q[(i, j)]).abs() / q[(i, j)].abs());
            }
        }
    }
    Ok(HadamardSplit {
        rcond_h: rcond_or_zero(&h),
        rcond_q_hat: rcond_or_zero(&q_hat),
        rcond_q: system.rcond,
        h,
        q_hat,
        reconstruction_error,
    })
}
