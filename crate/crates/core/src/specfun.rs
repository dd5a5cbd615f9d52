//! Modified Bessel functions of integer and half-integer order in
//! exponentially scaled form.
//!
//! Every public routine returns `e^{-z} I_ν(z)` or `e^{z} K_ν(z)` so that
//! values stay finite over the whole real argument range. Unscaled values are
//! available through [`bessel_i`] and [`bessel_k`], which overflow once the
//! exponential factor does.
//!
//! Algorithms:
//! * `I_ν`, `ν ≥ 0`: ascending series for `z ≤ 25`, Miller backward recurrence
//!   normalized by `I_0 + 2ΣI_k = e^z` (integer orders) or by the closed form
//!   of `I_{1/2}` (half-integer orders) up to `z = 2000`, Hankel's asymptotic
//!   expansion beyond.
//! * `K_ν`: `K_0`, `K_1` from their logarithmic series for `z ≤ 2` and from
//!   Steed's continued fraction otherwise; half-integer orders from the
//!   closed forms of `K_{1/2}`, `K_{3/2}`. Higher orders by forward recurrence,
//!   which is stable for `K`.
//! * Negative orders: `I_{-n} = I_n`, `K_{-ν} = K_ν`, and
//!   `I_{-ν} = I_ν + (2/π) sin(νπ) K_ν` for half-integer `ν`.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 25.0;
const ASYMPTOTIC_LIMIT: f64 = 2000.0;
const K_SERIES_LIMIT: f64 = 2.0;
const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;
const MAX_TERMS: usize = 1000;

/// Order of a Bessel function, stored doubled so that integer and
/// half-integer orders are both exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BesselOrder {
    twice: i32,
}

impl BesselOrder {
    pub const ZERO: BesselOrder = BesselOrder { twice: 0 };

    pub const fn from_twice(twice: i32) -> Self {
        BesselOrder { twice }
    }

    pub const fn integer(n: i32) -> Self {
        BesselOrder { twice: 2 * n }
    }

    /// The order `k + 1/2`.
    pub const fn half_odd(k: i32) -> Self {
        BesselOrder { twice: 2 * k + 1 }
    }

    /// Order `n/2 - 1 + m` of the order-`m` kernel in dimension `n`.
    pub const fn for_kernel(dimension: usize, m: usize) -> Self {
        BesselOrder {
            twice: dimension as i32 - 2 + 2 * m as i32,
        }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        BesselOrder {
            twice: self.twice.abs(),
        }
    }

    /// The order `ν + k`.
    pub const fn offset(self, k: i32) -> Self {
        BesselOrder {
            twice: self.twice + 2 * k,
        }
    }
}

impl From<i32> for BesselOrder {
    fn from(n: i32) -> Self {
        BesselOrder::integer(n)
    }
}

impl std::fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

fn check_argument(z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite Bessel argument {z}")));
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("negative Bessel argument {z}")));
    }
    Ok(())
}

/// `e^{-z} I_ν(z)` for `z ≥ 0`.
pub fn bessel_i_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    if order.twice >= 0 || order.is_integer() {
        return Ok(i_scaled_nonnegative(order.abs(), z));
    }
    // half-integer reflection
    let nu = order.abs();
    if z == 0.0 {
        return Ok(f64::INFINITY);
    }
    let k = (nu.twice - 1) / 2;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let i = i_scaled_nonnegative(nu, z);
    let kk = k_scaled_nonnegative(nu, z);
    Ok(i + sign * FRAC_2_PI * (-2.0 * z).exp() * kk)
}

/// `e^{z} K_ν(z)` for `z > 0`.
pub fn bessel_k_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    if z == 0.0 {
        return Err(Error::Domain("K diverges at z = 0".into()));
    }
    Ok(k_scaled_nonnegative(order.abs(), z))
}

/// `e^{-z} z^{-ν} I_ν(z)` for `ν ≥ 0`, `z ≥ 0`.
///
/// Finite and smooth at the origin, where it equals `2^{-ν} / Γ(ν + 1)`.
pub fn bessel_i_scaled_reduced(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    if order.twice < 0 {
        return Err(Error::Domain(format!(
            "reduced I requires a nonnegative order, got {order}"
        )));
    }
    let nu = order.value();
    if z <= SERIES_LIMIT {
        let prefactor = 0.5_f64.powf(nu) / gamma_plus_one(order) * (-z).exp();
        Ok(prefactor * ascending_sum(nu, z))
    } else {
        Ok(i_scaled_nonnegative(order, z) / z.powf(nu))
    }
}

/// Unscaled `I_ν(z)`; overflows to infinity for large `z`.
pub fn bessel_i(order: BesselOrder, z: f64) -> Result<f64> {
    Ok(bessel_i_scaled(order, z)? * z.exp())
}

/// Unscaled `K_ν(z)`; underflows to zero for large `z`.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, z)? * (-z).exp())
}

/// `Γ(ν + 1)` for `ν ≥ 0` integer or half-integer.
pub(crate) fn gamma_plus_one(order: BesselOrder) -> f64 {
    debug_assert!(order.twice >= 0);
    if order.is_integer() {
        (1..=order.twice / 2).fold(1.0, |acc, k| acc * f64::from(k))
    } else {
        // Γ(1/2) = √π, then Γ(x + 1) = x Γ(x)
        let mut g = PI.sqrt();
        let mut x = 0.5;
        for _ in 0..=(order.twice / 2) {
            g *= x;
            x += 1.0;
        }
        g
    }
}

/// `Σ_k (z²/4)^k Γ(ν+1) / (k! Γ(ν+k+1))`; all terms positive.
fn ascending_sum(nu: f64, z: f64) -> f64 {
    let y = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= y / (kf * (nu + kf));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    sum
}

fn i_scaled_nonnegative(order: BesselOrder, z: f64) -> f64 {
    debug_assert!(order.twice >= 0);
    if z == 0.0 {
        return if order.twice == 0 { 1.0 } else { 0.0 };
    }
    let nu = order.value();
    if z <= SERIES_LIMIT {
        let prefactor = (0.5 * z).powf(nu) / gamma_plus_one(order) * (-z).exp();
        prefactor * ascending_sum(nu, z)
    } else if z <= ASYMPTOTIC_LIMIT {
        miller_scaled(order, z)
    } else {
        hankel_scaled(nu, z)
    }
}

/// Backward recurrence `I_{ν-1} = (2ν/z) I_ν + I_{ν+1}` from a start index
/// well past where `I` has decayed, normalized at the end.
fn miller_scaled(order: BesselOrder, z: f64) -> f64 {
    let half = !order.is_integer();
    let frac = if half { 0.5 } else { 0.0 };
    let target = (order.twice / 2) as usize;
    let start = target + 30 + (12.0 * z.sqrt()).ceil() as usize;

    let mut above = 0.0; // f_{j+1}
    let mut current = 1.0; // f_j
    let mut captured = if start == target { current } else { 0.0 };
    let mut norm = if half { 0.0 } else { 2.0 * current };

    for j in (1..=start).rev() {
        let below = (2.0 * (j as f64 + frac) / z) * current + above;
        above = current;
        current = below;
        if j - 1 == target {
            captured = current;
        }
        if !half {
            norm += if j - 1 == 0 { current } else { 2.0 * current };
        }
        if current.abs() > RESCALE_THRESHOLD {
            current *= RESCALE_FACTOR;
            above *= RESCALE_FACTOR;
            norm *= RESCALE_FACTOR;
            if j - 1 <= target {
                captured *= RESCALE_FACTOR;
            }
        }
    }

    if half {
        // e^{-z} I_{1/2}(z) = √(2/(πz)) (1 - e^{-2z}) / 2
        let anchor = (2.0 / (PI * z)).sqrt() * (-0.5 * (-2.0 * z).exp_m1());
        captured / current * anchor
    } else {
        captured / norm
    }
}

fn hankel_scaled(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * kf * z);
        if next == 0.0 || next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * z).sqrt()
}

fn k_scaled_nonnegative(order: BesselOrder, z: f64) -> f64 {
    debug_assert!(order.twice >= 0 && z > 0.0);
    let (mut lower, mut upper, mut nu) = if order.is_integer() {
        let (k0, k1) = if z <= K_SERIES_LIMIT {
            k01_series_scaled(z)
        } else {
            k01_continued_fraction_scaled(z)
        };
        (k0, k1, 0.0)
    } else {
        let k_half = (PI / (2.0 * z)).sqrt();
        (k_half, k_half * (1.0 + 1.0 / z), 0.5)
    };
    let steps = order.twice / 2;
    if steps == 0 {
        return lower;
    }
    for _ in 1..steps {
        nu += 1.0;
        let next = lower + (2.0 * nu / z) * upper;
        lower = upper;
        upper = next;
    }
    upper
}

/// `(e^z K_0(z), e^z K_1(z))` from the logarithmic series.
fn k01_series_scaled(z: f64) -> (f64, f64) {
    let y = 0.25 * z * z;
    let log_half = (0.5 * z).ln();

    let mut i0 = 1.0;
    let mut i1_sum = 1.0;
    let mut k0_sum = 0.0;
    let mut k1_sum = 1.0 - 2.0 * EULER_GAMMA; // k = 0: ψ(1) + ψ(2)

    let mut t0 = 1.0; // y^k / (k!)^2
    let mut t1 = 1.0; // y^k / (k! (k+1)!)
    let mut harmonic = 0.0; // H_k
    for k in 1..60 {
        let kf = k as f64;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let harmonic_next = harmonic + 1.0 / (kf + 1.0);
        i0 += t0;
        i1_sum += t1;
        k0_sum += harmonic * t0;
        k1_sum += (harmonic + harmonic_next - 2.0 * EULER_GAMMA) * t1;
        if t0 < 1e-18 * i0 && t1 < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * z * i1_sum;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_sum;
    let k1 = 1.0 / z + log_half * i1 - 0.25 * z * k1_sum;
    let scale = z.exp();
    (k0 * scale, k1 * scale)
}

/// Steed's evaluation of Temme's continued fraction for `K_0` and `K_1`,
/// valid for `z ≳ 2`; returns scaled values directly.
fn k01_continued_fraction_scaled(z: f64) -> (f64, f64) {
    let mu = 0.0_f64;
    let a1 = 0.25 - mu * mu;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k_mu = (PI / (2.0 * z)).sqrt() / s;
    let k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
    (k_mu, k_mu1)
}
