//! Order-`m` general (`u_m^#`) and fundamental (`u_m^*`) solutions of the
//! convection-diffusion operator, evaluated in exponentially scaled form.
//!
//! With `r̄ = x_field − x_source`, `r = |r̄|`, `z = τr` and `ν = n/2 − 1 + m`:
//!
//! ```text
//! u_m^#(r̄) = A_m e^{v·r̄/2D} z^{m−n/2+1} I_ν(z)
//! u_m^*(r̄) = B_m e^{v·r̄/2D} z^{m−n/2+1} K_ν(z)
//! ```
//!
//! Amplitudes follow `A_m = A_{m−1} / (2mτ²D)` and
//! `B_m = −B_{m−1} / (2mτ²D)`, which makes `L u_m = u_{m−1}` hold exactly for
//! both families (and `L u_0^# = 0`). For `D = 1` the general amplitudes are
//! the familiar `A_m = A_{m−1} / (2mτ²)`.
//!
//! Public evaluation is always scaled: general kernels are multiplied by
//! `e^{−τL_c}`, fundamental kernels by `e^{+τL_c}`. All exponential factors are
//! folded into one call to `exp` of the combined exponent, with the Bessel
//! parts taken from [`crate::specfun`] in scaled form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::OperatorParams;
use crate::specfun::{bessel_i_scaled_reduced, bessel_k_scaled, gamma_plus_one, BesselOrder};

/// `ln(f64::MAX)`.
pub const EXPONENT_LIMIT: f64 = 709.782_712_893_384;

/// Below this argument the two-dimensional `z^m K_m(z)` is replaced by its
/// limit `(m−1)! 2^{m−1}`.
const SMALL_ARGUMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// Nonsingular solutions of `L u = 0` built from `I_ν`.
    General,
    /// Singular solutions built from `K_ν`.
    Fundamental,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelFamily {
    params: OperatorParams,
    kind: KernelKind,
    amplitudes: Vec<f64>,
    scaling_length: f64,
}

impl KernelFamily {
    /// Kernels up to order `max_order`, with unit leading amplitude.
    pub fn new(
        params: OperatorParams,
        kind: KernelKind,
        max_order: usize,
        scaling_length: f64,
    ) -> Result<Self> {
        if !(scaling_length >= 0.0 && scaling_length.is_finite()) {
            return Err(Error::param(format!(
                "scaling length must be finite and nonnegative, got {scaling_length}"
            )));
        }
        let step = 2.0 * params.tau() * params.tau() * params.diffusivity();
        let sign = match kind {
            KernelKind::General => 1.0,
            KernelKind::Fundamental => -1.0,
        };
        let mut amplitudes = Vec::with_capacity(max_order + 1);
        amplitudes.push(1.0);
        for m in 1..=max_order {
            let prev = amplitudes[m - 1];
            amplitudes.push(sign * prev / (m as f64 * step));
        }
        if amplitudes.iter().any(|a| !a.is_finite() || *a == 0.0) {
            return Err(Error::param(format!(
                "kernel amplitudes leave the f64 range by order {max_order} (τ = {})",
                params.tau()
            )));
        }
        Ok(KernelFamily {
            params,
            kind,
            amplitudes,
            scaling_length,
        })
    }

    pub fn general(params: OperatorParams, max_order: usize, scaling_length: f64) -> Result<Self> {
        Self::new(params, KernelKind::General, max_order, scaling_length)
    }

    pub fn fundamental(
        params: OperatorParams,
        max_order: usize,
        scaling_length: f64,
    ) -> Result<Self> {
        Self::new(params, KernelKind::Fundamental, max_order, scaling_length)
    }

    /// Fundamental kernels with `B_0` chosen so that `L u_0^* = −δ`.
    pub fn fundamental_dirac(
        params: OperatorParams,
        max_order: usize,
        scaling_length: f64,
    ) -> Result<Self> {
        let b0 = dirac_amplitude(&params)?;
        Ok(Self::fundamental(params, max_order, scaling_length)?.with_leading_amplitude(b0))
    }

    /// Rescales every amplitude so that the order-0 amplitude equals `a0`.
    pub fn with_leading_amplitude(mut self, a0: f64) -> Self {
        let s = a0 / self.amplitudes[0];
        for a in &mut self.amplitudes {
            *a *= s;
        }
        self
    }

    pub fn with_scaling_length(&self, scaling_length: f64) -> Result<Self> {
        Self::new(
            self.params.clone(),
            self.kind,
            self.max_order(),
            scaling_length,
        )
        .map(|f| f.with_leading_amplitude(self.amplitudes[0]))
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn max_order(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, m: usize) -> Option<f64> {
        self.amplitudes.get(m).copied()
    }

    pub fn scaling_length(&self) -> f64 {
        self.scaling_length
    }

    pub fn dimension(&self) -> usize {
        self.params.dimension()
    }

    /// The scale factor applied to every kernel, `e^{∓τL_c}` as a log.
    fn scale_exponent(&self) -> f64 {
        let t = self.params.tau() * self.scaling_length;
        match self.kind {
            KernelKind::General => -t,
            KernelKind::Fundamental => t,
        }
    }

    fn geometry(&self, m: usize, field: &[f64], source: &[f64]) -> Result<Separation> {
        if m > self.max_order() {
            return Err(Error::param(format!(
                "kernel order {m} exceeds family maximum {}",
                self.max_order()
            )));
        }
        let n = self.dimension();
        if field.len() != n || source.len() != n {
            return Err(Error::param(format!(
                "points must have {n} coordinates (got {} and {})",
                field.len(),
                source.len()
            )));
        }
        let offset: Vec<f64> = field.iter().zip(source).map(|(a, b)| a - b).collect();
        if offset.iter().any(|c| !c.is_finite()) {
            return Err(Error::param("non-finite kernel point"));
        }
        let r = offset.iter().map(|c| c * c).sum::<f64>().sqrt();
        let drift_dot: f64 = self
            .params
            .velocity()
            .iter()
            .zip(&offset)
            .map(|(v, c)| v * c)
            .sum::<f64>()
            / (2.0 * self.params.diffusivity());
        Ok(Separation {
            offset,
            r,
            z: self.params.tau() * r,
            drift_dot,
        })
    }

    /// The exponent whose `exp` carries every exponential factor of the
    /// scaled kernel: `∓τL_c + v·r̄/2D ± τr`.
    pub fn combined_exponent(&self, field: &[f64], source: &[f64]) -> Result<f64> {
        let s = self.geometry(0, field, source)?;
        Ok(self.exponent_of(&s))
    }

    fn exponent_of(&self, s: &Separation) -> f64 {
        match self.kind {
            KernelKind::General => self.scale_exponent() + s.drift_dot + s.z,
            KernelKind::Fundamental => self.scale_exponent() + s.drift_dot - s.z,
        }
    }

    fn checked_exp(exponent: f64) -> Result<f64> {
        if exponent > EXPONENT_LIMIT {
            return Err(Error::Overflow {
                exponent,
                limit: EXPONENT_LIMIT,
            });
        }
        Ok(exponent.exp())
    }

    fn singular_at(&self, m: usize, s: &Separation) -> bool {
        self.kind == KernelKind::Fundamental && s.r == 0.0 && (self.dimension() >= 3 || m == 0)
    }

    /// Scaled kernel value of order `m`.
    pub fn value(&self, m: usize, field: &[f64], source: &[f64]) -> Result<f64> {
        let s = self.geometry(m, field, source)?;
        let exponent = self.exponent_of(&s);
        let scale = Self::checked_exp(exponent)?;
        let amplitude = self.amplitudes[m];
        let n = self.dimension();
        let nu = BesselOrder::for_kernel(n, m);
        let radial = match self.kind {
            KernelKind::General => powi(s.z, 2 * m) * bessel_i_scaled_reduced(nu, s.z)?,
            KernelKind::Fundamental => {
                if self.singular_at(m, &s) {
                    return Err(Error::Singularity {
                        dimension: n,
                        order: m,
                    });
                }
                if n == 2 && m >= 1 && s.z < SMALL_ARGUMENT {
                    planar_k_limit(m)
                } else {
                    s.z.powf(m as f64 - half_excess(n)) * bessel_k_scaled(nu, s.z)?
                }
            }
        };
        let value = amplitude * scale * radial;
        if !value.is_finite() {
            return Err(Error::Overflow {
                exponent,
                limit: EXPONENT_LIMIT,
            });
        }
        Ok(value)
    }

    /// Scaled gradient with respect to the field point.
    pub fn gradient(&self, m: usize, field: &[f64], source: &[f64]) -> Result<Vec<f64>> {
        let value = self.value(m, field, source)?;
        let s = self.geometry(m, field, source)?;
        let exponent = self.exponent_of(&s);
        let scale = Self::checked_exp(exponent)?;
        let amplitude = self.amplitudes[m];
        let n = self.dimension();
        let nu = BesselOrder::for_kernel(n, m);
        let tau2 = self.params.tau() * self.params.tau();

        // (1/z) d/dz of the radial factor; the gradient picks up τ² r̄ times it.
        let radial_over_z = match self.kind {
            KernelKind::General => {
                let lower = if m > 0 {
                    2.0 * m as f64 * powi(s.z, 2 * m - 2) * bessel_i_scaled_reduced(nu, s.z)?
                } else {
                    0.0
                };
                lower + powi(s.z, 2 * m) * bessel_i_scaled_reduced(nu.offset(1), s.z)?
            }
            KernelKind::Fundamental => {
                if s.r == 0.0 {
                    // only reachable for n = 2, m ≥ 1, where the radial part vanishes
                    0.0
                } else {
                    let nu0 = half_excess(n);
                    let p = m as f64 - nu0;
                    let k_nu = bessel_k_scaled(nu, s.z)?;
                    let k_lower = bessel_k_scaled(nu.offset(-1), s.z)?;
                    s.z.powf(p - 2.0) * (-2.0 * nu0 * k_nu - s.z * k_lower)
                }
            }
        };
        let radial_scale = amplitude * scale * tau2 * radial_over_z;
        let drift = self.params.drift();
        let grad: Vec<f64> = drift
            .iter()
            .zip(&s.offset)
            .map(|(d, c)| d * value + radial_scale * c)
            .collect();
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::Overflow {
                exponent,
                limit: EXPONENT_LIMIT,
            });
        }
        Ok(grad)
    }

    /// Scaled directional derivative `normal · ∇u_m` at the field point.
    pub fn normal_derivative(
        &self,
        m: usize,
        field: &[f64],
        source: &[f64],
        normal: &[f64],
    ) -> Result<f64> {
        let g = self.gradient(m, field, source)?;
        Ok(g.iter().zip(normal).map(|(a, b)| a * b).sum())
    }
}

struct Separation {
    offset: Vec<f64>,
    r: f64,
    z: f64,
    drift_dot: f64,
}

/// `n/2 − 1`.
fn half_excess(n: usize) -> f64 {
    n as f64 / 2.0 - 1.0
}

fn powi(z: f64, k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        z.powi(k as i32)
    }
}

/// `lim_{z→0} z^m K_m(z) = (m−1)! 2^{m−1}` for `m ≥ 1`.
fn planar_k_limit(m: usize) -> f64 {
    gamma_plus_one(BesselOrder::integer(m as i32 - 1)) * 2f64.powi(m as i32 - 1)
}

/// `B_0` such that `L u_0^* = −δ` (unscaled).
pub fn dirac_amplitude(params: &OperatorParams) -> Result<f64> {
    let n = params.dimension();
    let d = params.diffusivity();
    if n == 2 {
        return Ok(1.0 / (2.0 * PI * d));
    }
    // Near the source u_0^* ≈ B_0 Γ(ν) 2^{ν−1} (τr)^{2−n}, ν = n/2 − 1, which
    // must match r^{2−n} / ((n−2) ω_n D), ω_n = 2π^{n/2} / Γ(n/2).
    let nu = BesselOrder::for_kernel(n, 0);
    let gamma_nu = gamma_plus_one(nu) / nu.value();
    let gamma_half_n = gamma_plus_one(nu);
    let omega = 2.0 * PI.powf(n as f64 / 2.0) / gamma_half_n;
    let tau_power = params.tau().powi(n as i32 - 2);
    Ok(tau_power / ((n as f64 - 2.0) * omega * d * gamma_nu * 2f64.powf(nu.value() - 1.0)))
}

/// Scaled order-`m` general solution `e^{−τL_c} u_m^#`.
pub fn general_scaled(
    family: &KernelFamily,
    m: usize,
    field: &[f64],
    source: &[f64],
) -> Result<f64> {
    require_kind(family, KernelKind::General)?;
    family.value(m, field, source)
}

/// Scaled order-`m` fundamental solution `e^{+τL_c} u_m^*`.
pub fn fundamental_scaled(
    family: &KernelFamily,
    m: usize,
    field: &[f64],
    source: &[f64],
) -> Result<f64> {
    require_kind(family, KernelKind::Fundamental)?;
    family.value(m, field, source)
}

/// Scaled gradient of an order-`m` kernel of the given kind.
pub fn kernel_gradient_scaled(
    family: &KernelFamily,
    kind: KernelKind,
    m: usize,
    field: &[f64],
    source: &[f64],
) -> Result<Vec<f64>> {
    require_kind(family, kind)?;
    family.gradient(m, field, source)
}

fn require_kind(family: &KernelFamily, kind: KernelKind) -> Result<()> {
    if family.kind() != kind {
        return Err(Error::param(format!(
            "kernel family is {:?}, requested {kind:?}",
            family.kind()
        )));
    }
    Ok(())
}
