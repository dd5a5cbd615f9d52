//! The steady convection-diffusion operator `L u = D∇²u − v·∇u − κu` and an
//! analytic function family closed under it.
//!
//! Operator powers use plain counting: `L^0 f = f`, `L^j f = L(L^{j-1} f)`.
//! (The superscript convention `ℜ^0 = ℜ` used in some multiple-reciprocity
//! literature corresponds to `L^{j+1}` here.)

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane.
pub type Point = [f64; 2];

/// Coefficients of the convection-diffusion operator together with the
/// wavenumber `τ = sqrt((|v|/2D)² + κ/D)` of the equivalent modified
/// Helmholtz equation.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorParams {
    diffusivity: f64,
    velocity: Vec<f64>,
    reaction: f64,
    tau: f64,
}

impl OperatorParams {
    pub fn new(diffusivity: f64, velocity: &[f64], reaction: f64) -> Result<Self> {
        make_params(diffusivity, velocity, reaction, velocity.len())
    }

    pub fn diffusivity(&self) -> f64 {
        self.diffusivity
    }

    pub fn velocity(&self) -> &[f64] {
        &self.velocity
    }

    pub fn reaction(&self) -> f64 {
        self.reaction
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn dimension(&self) -> usize {
        self.velocity.len()
    }

    pub fn speed(&self) -> f64 {
        self.velocity.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// `v / 2D`, the gradient of the exponential factor `e^{v·r/2D}`.
    pub fn drift(&self) -> Vec<f64> {
        let s = 0.5 / self.diffusivity;
        self.velocity.iter().map(|c| c * s).collect()
    }

    pub fn peclet(&self, length: f64) -> Result<f64> {
        peclet(self, length)
    }
}

pub fn make_params(
    diffusivity: f64,
    velocity: &[f64],
    reaction: f64,
    dimension: usize,
) -> Result<OperatorParams> {
    if dimension < 2 {
        return Err(Error::param(format!(
            "dimension must be at least 2, got {dimension}"
        )));
    }
    if velocity.len() != dimension {
        return Err(Error::param(format!(
            "velocity has {} components, expected {dimension}",
            velocity.len()
        )));
    }
    if !(diffusivity > 0.0 && diffusivity.is_finite()) {
        return Err(Error::param(format!(
            "diffusivity must be positive, got {diffusivity}"
        )));
    }
    if !reaction.is_finite() || velocity.iter().any(|c| !c.is_finite()) {
        return Err(Error::param("non-finite operator coefficient"));
    }
    let speed2: f64 = velocity.iter().map(|c| c * c).sum();
    let half = speed2.sqrt() / (2.0 * diffusivity);
    let tau2 = half * half + reaction / diffusivity;
    if !(tau2 > 0.0) {
        return Err(Error::param(format!(
            "τ² = {tau2} is not positive; the modified Helmholtz form does not apply"
        )));
    }
    Ok(OperatorParams {
        diffusivity,
        velocity: velocity.to_vec(),
        reaction,
        tau: tau2.sqrt(),
    })
}

/// `|v| L_c / D`.
pub fn peclet(params: &OperatorParams, length: f64) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::param(format!(
            "characteristic length must be positive, got {length}"
        )));
    }
    Ok(params.speed() * length / params.diffusivity)
}

/// One term `c · x^p · y^q · e^{a_x x + a_y y}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coefficient: f64,
    #[serde(rename = "p")]
    pub px: u32,
    #[serde(rename = "q")]
    pub py: u32,
    #[serde(rename = "a")]
    pub exponent: [f64; 2],
}

impl Term {
    pub fn new(coefficient: f64, px: u32, py: u32, exponent: [f64; 2]) -> Self {
        Term {
            coefficient,
            px,
            py,
            exponent: [normalize_zero(exponent[0]), normalize_zero(exponent[1])],
        }
    }

    fn key_cmp(&self, other: &Term) -> Ordering {
        self.exponent[0]
            .total_cmp(&other.exponent[0])
            .then(self.exponent[1].total_cmp(&other.exponent[1]))
            .then(self.px.cmp(&other.px))
            .then(self.py.cmp(&other.py))
    }

    fn same_key(&self, other: &Term) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }

    fn value(&self, x: Point) -> f64 {
        self.coefficient
            * powu(x[0], self.px)
            * powu(x[1], self.py)
            * (self.exponent[0] * x[0] + self.exponent[1] * x[1]).exp()
    }
}

fn normalize_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn powu(x: f64, p: u32) -> f64 {
    if p == 0 {
        1.0
    } else {
        x.powi(p as i32)
    }
}

/// Finite sums of [`Term`]s, kept in canonical form: sorted, with like terms
/// merged and exact zeros dropped.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct PolyExpFunction {
    terms: Vec<Term>,
}

impl From<Vec<Term>> for PolyExpFunction {
    fn from(terms: Vec<Term>) -> Self {
        PolyExpFunction::from_terms(terms)
    }
}

impl From<PolyExpFunction> for Vec<Term> {
    fn from(f: PolyExpFunction) -> Self {
        f.terms
    }
}

impl PolyExpFunction {
    pub fn zero() -> Self {
        PolyExpFunction { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|t| Term::new(t.coefficient, t.px, t.py, t.exponent))
            .collect();
        terms.sort_by(Term::key_cmp);
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.same_key(&t) => last.coefficient += t.coefficient,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coefficient != 0.0);
        PolyExpFunction { terms: merged }
    }

    pub fn term(coefficient: f64, px: u32, py: u32, exponent: [f64; 2]) -> Self {
        Self::from_terms([Term::new(coefficient, px, py, exponent)])
    }

    pub fn constant(c: f64) -> Self {
        Self::term(c, 0, 0, [0.0, 0.0])
    }

    pub fn exponential(exponent: [f64; 2]) -> Self {
        Self::term(1.0, 0, 0, exponent)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coefficient.is_finite() && t.exponent.iter().all(|a| a.is_finite()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term {
            coefficient: t.coefficient * s,
            ..*t
        }))
    }

    /// `∂f/∂x` (`axis = 0`) or `∂f/∂y` (`axis = 1`).
    pub fn derivative(&self, axis: usize) -> Self {
        assert!(axis < 2, "axis must be 0 or 1");
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            let a = t.exponent[axis];
            if a != 0.0 {
                out.push(Term {
                    coefficient: t.coefficient * a,
                    ..*t
                });
            }
            let power = if axis == 0 { t.px } else { t.py };
            if power > 0 {
                let mut d = *t;
                d.coefficient *= f64::from(power);
                if axis == 0 {
                    d.px -= 1;
                } else {
                    d.py -= 1;
                }
                out.push(d);
            }
        }
        Self::from_terms(out)
    }

    pub fn evaluate(&self, x: Point) -> f64 {
        self.terms.iter().map(|t| t.value(x)).sum()
    }

    /// Exact analytic gradient.
    pub fn gradient(&self, x: Point) -> [f64; 2] {
        let mut g = [0.0; 2];
        for t in &self.terms {
            let e = (t.exponent[0] * x[0] + t.exponent[1] * x[1]).exp();
            let xp = powu(x[0], t.px);
            let yq = powu(x[1], t.py);
            let dxp = if t.px > 0 {
                f64::from(t.px) * powu(x[0], t.px - 1)
            } else {
                0.0
            };
            let dyq = if t.py > 0 {
                f64::from(t.py) * powu(x[1], t.py - 1)
            } else {
                0.0
            };
            g[0] += t.coefficient * yq * e * (dxp + t.exponent[0] * xp);
            g[1] += t.coefficient * xp * e * (dyq + t.exponent[1] * yq);
        }
        g
    }

    pub fn normal_derivative(&self, x: Point, normal: [f64; 2]) -> f64 {
        let g = self.gradient(x);
        g[0] * normal[0] + g[1] * normal[1]
    }

    /// Largest total polynomial degree over all terms.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.px + t.py).max().unwrap_or(0)
    }
}

impl Add for &PolyExpFunction {
    type Output = PolyExpFunction;
    fn add(self, rhs: &PolyExpFunction) -> PolyExpFunction {
        PolyExpFunction::from_terms(self.terms.iter().chain(&rhs.terms).copied())
    }
}

impl Sub for &PolyExpFunction {
    type Output = PolyExpFunction;
    fn sub(self, rhs: &PolyExpFunction) -> PolyExpFunction {
        self + &(-rhs)
    }
}

impl Neg for &PolyExpFunction {
    type Output = PolyExpFunction;
    fn neg(self) -> PolyExpFunction {
        self.scale(-1.0)
    }
}

impl Mul<&PolyExpFunction> for f64 {
    type Output = PolyExpFunction;
    fn mul(self, rhs: &PolyExpFunction) -> PolyExpFunction {
        rhs.scale(self)
    }
}

impl fmt::Display for PolyExpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coefficient)?;
            if t.px > 0 {
                write!(f, "·x^{}", t.px)?;
            }
            if t.py > 0 {
                write!(f, "·y^{}", t.py)?;
            }
            if t.exponent != [0.0, 0.0] {
                write!(f, "·exp({}x + {}y)", t.exponent[0], t.exponent[1])?;
            }
        }
        Ok(())
    }
}

fn require_planar(params: &OperatorParams) -> Result<()> {
    if params.dimension() != 2 {
        return Err(Error::param(format!(
            "poly-exponential functions are planar; operator has dimension {}",
            params.dimension()
        )));
    }
    Ok(())
}

/// `D∇²f − v·∇f − κf`.
pub fn apply_operator(params: &OperatorParams, f: &PolyExpFunction) -> Result<PolyExpFunction> {
    require_planar(params)?;
    let d = params.diffusivity;
    let v = params.velocity();
    let mut out: Vec<Term> = Vec::new();
    for (axis, va) in v.iter().enumerate() {
        let first = f.derivative(axis);
        let second = first.derivative(axis);
        out.extend(second.terms.iter().map(|t| Term {
            coefficient: d * t.coefficient,
            ..*t
        }));
        out.extend(first.terms.iter().map(|t| Term {
            coefficient: -va * t.coefficient,
            ..*t
        }));
    }
    out.extend(f.terms.iter().map(|t| Term {
        coefficient: -params.reaction * t.coefficient,
        ..*t
    }));
    let result = PolyExpFunction::from_terms(out);
    if !result.is_finite() {
        return Err(Error::Evaluation("operator image coefficients".into()));
    }
    Ok(result)
}

/// `L^j f`, with `L^0 f = f`.
pub fn operator_power(
    params: &OperatorParams,
    f: &PolyExpFunction,
    j: usize,
) -> Result<PolyExpFunction> {
    let mut g = f.clone();
    for _ in 0..j {
        if g.is_zero() {
            break;
        }
        g = apply_operator(params, &g)?;
    }
    Ok(g)
}

/// A pointwise function.
pub type PointFn = Arc<dyn Fn(Point) -> f64 + Send + Sync>;

/// Applies the operator to an arbitrary pointwise function through nested
/// second-order central differences. Accuracy degrades quickly with the
/// power `j` (each level costs a factor of 5 evaluations and loses digits).
#[derive(Clone)]
pub struct FiniteDifferenceSource {
    f: PointFn,
    params: OperatorParams,
    step: f64,
}

impl fmt::Debug for FiniteDifferenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDifferenceSource")
            .field("params", &self.params)
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

impl FiniteDifferenceSource {
    pub fn new(f: PointFn, params: OperatorParams, step: f64) -> Result<Self> {
        require_planar(&params)?;
        if !(step > 0.0) {
            return Err(Error::param("finite-difference step must be positive"));
        }
        Ok(FiniteDifferenceSource { f, params, step })
    }

    pub fn power_value(&self, j: usize, x: Point) -> f64 {
        if j == 0 {
            return (self.f)(x);
        }
        let h = self.step;
        let c = self.power_value(j - 1, x);
        let xp = self.power_value(j - 1, [x[0] + h, x[1]]);
        let xm = self.power_value(j - 1, [x[0] - h, x[1]]);
        let yp = self.power_value(j - 1, [x[0], x[1] + h]);
        let ym = self.power_value(j - 1, [x[0], x[1] - h]);
        let lap = (xp + xm + yp + ym - 4.0 * c) / (h * h);
        let gx = (xp - xm) / (2.0 * h);
        let gy = (yp - ym) / (2.0 * h);
        let v = self.params.velocity();
        self.params.diffusivity * lap - v[0] * gx - v[1] * gy - self.params.reaction * c
    }

    pub fn power_gradient(&self, j: usize, x: Point) -> [f64; 2] {
        let h = self.step;
        [
            (self.power_value(j, [x[0] + h, x[1]]) - self.power_value(j, [x[0] - h, x[1]]))
                / (2.0 * h),
            (self.power_value(j, [x[0], x[1] + h]) - self.power_value(j, [x[0], x[1] - h]))
                / (2.0 * h),
        ]
    }
}

/// Right-hand side `f` of `L u = f`.
#[derive(Debug, Clone)]
pub enum Source {
    Analytic(PolyExpFunction),
    /// Low-accuracy fallback for sources outside the analytic family.
    Sampled(FiniteDifferenceSource),
}

impl Source {
    pub fn zero() -> Self {
        Source::Analytic(PolyExpFunction::zero())
    }

    /// Precomputes operator powers `L^0 f ..= L^max_power f`.
    pub fn prepare(&self, params: &OperatorParams, max_power: usize) -> Result<PreparedSource> {
        match self {
            Source::Analytic(f) => {
                let mut powers = Vec::with_capacity(max_power + 1);
                let mut g = f.clone();
                powers.push(g.clone());
                for _ in 0..max_power {
                    g = apply_operator(params, &g)?;
                    powers.push(g.clone());
                }
                Ok(PreparedSource::Analytic(powers))
            }
            Source::Sampled(s) => Ok(PreparedSource::Sampled(s.clone())),
        }
    }
}

impl From<PolyExpFunction> for Source {
    fn from(f: PolyExpFunction) -> Self {
        Source::Analytic(f)
    }
}

#[derive(Debug, Clone)]
pub enum PreparedSource {
    Analytic(Vec<PolyExpFunction>),
    Sampled(FiniteDifferenceSource),
}

impl PreparedSource {
    pub fn max_power(&self) -> Option<usize> {
        match self {
            PreparedSource::Analytic(p) => Some(p.len() - 1),
            PreparedSource::Sampled(_) => None,
        }
    }

    /// `L^j f (x)`.
    pub fn value(&self, j: usize, x: Point) -> f64 {
        match self {
            PreparedSource::Analytic(p) => p.get(j).map_or(0.0, |g| g.evaluate(x)),
            PreparedSource::Sampled(s) => s.power_value(j, x),
        }
    }

    /// `∇ L^j f (x)`.
    pub fn gradient(&self, j: usize, x: Point) -> [f64; 2] {
        match self {
            PreparedSource::Analytic(p) => p.get(j).map_or([0.0; 2], |g| g.gradient(x)),
            PreparedSource::Sampled(s) => s.power_gradient(j, x),
        }
    }

    /// True when `L^j f` is known to vanish identically.
    pub fn vanishes(&self, j: usize) -> bool {
        match self {
            PreparedSource::Analytic(p) => p.get(j).is_some_and(PolyExpFunction::is_zero),
            PreparedSource::Sampled(_) => false,
        }
    }
}
