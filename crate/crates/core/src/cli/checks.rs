//! Randomized invariant suite for the special functions and kernels.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kernels::{KernelFamily, KernelKind};
use crate::operator::{make_params, OperatorParams};
use crate::specfun::{bessel_i_scaled, bessel_k_scaled, BesselOrder};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    /// Largest observed error, in the check's own relative measure.
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    samples: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally {
            name,
            tolerance,
            samples: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, err: f64) {
        self.samples += 1;
        // NaN counts as a failure
        if !(err <= self.worst) {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            samples: self.samples,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: self.worst <= self.tolerance,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn random_params(r: &mut ChaCha8Rng, n: usize, tau: f64) -> OperatorParams {
    let d: f64 = r.gen_range(0.5..2.0);
    let dir: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
    let drift = r.gen_range(0.0..0.95) * tau;
    let v: Vec<f64> = dir.iter().map(|c| c / norm * drift * 2.0 * d).collect();
    make_params(d, &v, d * (tau * tau - drift * drift), n).expect("valid random parameters")
}

fn random_offset(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let dir: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
    let len = r.gen_range(lo..hi);
    dir.iter().map(|c| c / norm * len).collect()
}

/// Fourth-order central first and second derivatives along `axis`.
fn fd_axis(f: &dyn Fn(&[f64]) -> f64, x: &[f64], axis: usize, h: f64) -> (f64, f64) {
    let at = |d: f64| {
        let mut y = x.to_vec();
        y[axis] += d;
        f(&y)
    };
    let (p1, m1, p2, m2, c) = (at(h), at(-h), at(2.0 * h), at(-2.0 * h), f(x));
    (
        (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h),
        (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h),
    )
}

fn fd_operator(params: &OperatorParams, f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let mut out = -params.reaction() * f(x);
    for (i, v) in params.velocity().iter().enumerate() {
        let (d1, d2) = fd_axis(f, x, i, h);
        out += params.diffusivity() * d2 - v * d1;
    }
    out
}

fn step_for(offset: &[f64]) -> f64 {
    (offset.iter().map(|c| c * c).sum::<f64>().sqrt() / 200.0).min(1e-3)
}

fn wronskian(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("bessel-wronskian", 1e-12);
    for _ in 0..200 {
        let nu = BesselOrder::from_twice(r.gen_range(0..60));
        let z = 10f64.powf(r.gen_range(-3.0..3.0));
        let i0 = bessel_i_scaled(nu, z);
        let i1 = bessel_i_scaled(nu.offset(1), z);
        let k0 = bessel_k_scaled(nu, z);
        let k1 = bessel_k_scaled(nu.offset(1), z);
        match (i0, i1, k0, k1) {
            (Ok(i0), Ok(i1), Ok(k0), Ok(k1)) => t.record(rel(z * (i0 * k1 + i1 * k0), 1.0)),
            _ => t.record(f64::INFINITY),
        }
    }
    t.finish()
}

fn recurrences(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("bessel-recurrence", 1e-13);
    for _ in 0..200 {
        let nu = BesselOrder::from_twice(r.gen_range(2..60));
        let z = 10f64.powf(r.gen_range(-2.0..3.0));
        let f = 2.0 * nu.value() / z;
        let i = |k: i32| bessel_i_scaled(nu.offset(k), z).unwrap_or(f64::NAN);
        let k = |k: i32| bessel_k_scaled(nu.offset(k), z).unwrap_or(f64::NAN);
        t.record((i(-1) - i(1) - f * i(0)).abs() / (i(-1).abs() + i(1).abs()));
        t.record((k(1) - k(-1) - f * k(0)).abs() / (k(1).abs() + k(-1).abs()));
    }
    t.finish()
}

fn pde_membership(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("kernel-pde-membership", 1e-5);
    for sample in 0..100 {
        let n = 2 + sample % 2;
        let tau = r.gen_range(0.5..5.0);
        let params = random_params(r, n, tau);
        let family = KernelFamily::general(params.clone(), 0, 0.0).expect("family");
        let source = vec![0.0; n];
        let x = random_offset(r, n, 0.05, 2.0);
        let u = |p: &[f64]| family.value(0, p, &source).unwrap_or(f64::NAN);
        t.record((fd_operator(&params, &u, &x, step_for(&x)) / u(&x)).abs());
    }
    t.finish()
}

fn telescoping(r: &mut ChaCha8Rng, kind: KernelKind) -> CheckOutcome {
    let name = match kind {
        KernelKind::General => "telescoping-general",
        KernelKind::Fundamental => "telescoping-fundamental",
    };
    let mut t = Tally::new(name, 1e-5);
    for sample in 0..50 {
        let n = 2 + sample % 2;
        let tau = r.gen_range(0.5..5.0);
        let params = random_params(r, n, tau);
        let family = KernelFamily::new(params.clone(), kind, 3, 0.0).expect("family");
        let source: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let offset = random_offset(r, n, 0.05, 2.0);
        let x: Vec<f64> = source.iter().zip(&offset).map(|(a, b)| a + b).collect();
        for m in 1..=3 {
            let u = |p: &[f64]| family.value(m, p, &source).unwrap_or(f64::NAN);
            let lowered = fd_operator(&params, &u, &x, step_for(&offset));
            let expected = family.value(m - 1, &x, &source).unwrap_or(f64::NAN);
            t.record(rel(lowered, expected));
        }
    }
    t.finish()
}

fn closed_forms(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("spatial-closed-forms", 1e-12);
    for _ in 0..20 {
        let tau = r.gen_range(0.5..4.0);
        let params = random_params(r, 3, tau);
        let family = KernelFamily::general(params.clone(), 2, 0.0).expect("family");
        let offset = random_offset(r, 3, 1.0 / tau, 5.0 / tau);
        let z = tau * offset.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dot: f64 = params.drift().iter().zip(&offset).map(|(d, c)| d * c).sum();
        let pre = (2.0 / PI).sqrt() * dot.exp();
        let a = family.amplitudes();
        let (s, c) = (z.sinh(), z.cosh());
        let closed = [
            a[0] * pre * s / z,
            a[1] * pre * (z * c - s) / z,
            a[2] * pre * (z * z * s + 3.0 * s - 3.0 * z * c) / z,
        ];
        for (m, expected) in closed.iter().enumerate() {
            t.record(rel(
                family.value(m, &offset, &[0.0; 3]).unwrap_or(f64::NAN),
                *expected,
            ));
        }
    }
    t.finish()
}

fn scaling(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("scaling-exactness", 1e-13);
    for _ in 0..50 {
        let tau = r.gen_range(0.5..5.0);
        let params = random_params(r, 2, tau);
        let c = r.gen_range(0.1..3.0);
        let plain = KernelFamily::general(params, 3, 0.0).expect("family");
        let scaled = plain.with_scaling_length(c).expect("family");
        let x = random_offset(r, 2, 0.0, 2.0);
        for m in 0..=3 {
            let a = plain.value(m, &x, &[0.0, 0.0]).unwrap_or(f64::NAN);
            let b = scaled.value(m, &x, &[0.0, 0.0]).unwrap_or(f64::NAN) * (tau * c).exp();
            t.record(rel(b, a));
        }
    }
    t.finish()
}

fn gradients(r: &mut ChaCha8Rng) -> CheckOutcome {
    let mut t = Tally::new("gradient-consistency", 1e-6);
    for kind in [KernelKind::General, KernelKind::Fundamental] {
        for sample in 0..40 {
            let n = 2 + sample % 2;
            let tau = r.gen_range(0.5..4.0);
            let params = random_params(r, n, tau);
            let family = KernelFamily::new(params, kind, 2, 0.0).expect("family");
            let x = random_offset(r, n, 0.1, 2.0);
            let src = vec![0.0; n];
            for m in 0..=2 {
                let u = |p: &[f64]| family.value(m, p, &src).unwrap_or(f64::NAN);
                let g = family
                    .gradient(m, &x, &src)
                    .unwrap_or_else(|_| vec![f64::NAN; n]);
                let scale = g
                    .iter()
                    .map(|c| c.abs())
                    .fold(0.0, f64::max)
                    .max(u(&x).abs());
                let h = step_for(&x);
                let worst = (0..n)
                    .map(|i| (fd_axis(&u, &x, i, h).0 - g[i]).abs() / scale)
                    .fold(0.0, f64::max);
                t.record(worst);
            }
        }
    }
    t.finish()
}

/// Runs the whole suite with a reproducible random stream.
pub fn run_kernel_checks(seed: u64) -> Vec<CheckOutcome> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    vec![
        wronskian(&mut r),
        recurrences(&mut r),
        pde_membership(&mut r),
        telescoping(&mut r, KernelKind::General),
        telescoping(&mut r, KernelKind::Fundamental),
        closed_forms(&mut r),
        scaling(&mut r),
        gradients(&mut r),
    ]
}
