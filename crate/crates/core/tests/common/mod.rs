//! Independent oracles shared by the integration tests: fourth-order central
//! differences of arbitrary pointwise functions.

#![allow(dead_code)]

use boundary_particle::operator::OperatorParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shifted(x: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[axis] += delta;
    y
}

/// Fourth-order central first and second derivatives along `axis`.
pub fn fd_axis<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], axis: usize, h: f64) -> (f64, f64) {
    let p1 = f(&shifted(x, axis, h));
    let m1 = f(&shifted(x, axis, -h));
    let p2 = f(&shifted(x, axis, 2.0 * h));
    let m2 = f(&shifted(x, axis, -2.0 * h));
    let c = f(x);
    let first = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let second = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
    (first, second)
}

pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len()).map(|i| fd_axis(f, x, i, h).0).collect()
}

pub fn fd_laplacian<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> f64 {
    (0..x.len()).map(|i| fd_axis(f, x, i, h).1).sum()
}

/// `D∇²f − v·∇f − κf` by finite differences.
pub fn fd_operator<F: Fn(&[f64]) -> f64>(params: &OperatorParams, f: &F, x: &[f64], h: f64) -> f64 {
    let mut lap = 0.0;
    let mut adv = 0.0;
    for (i, v) in params.velocity().iter().enumerate() {
        let (d1, d2) = fd_axis(f, x, i, h);
        lap += d2;
        adv += v * d1;
    }
    params.diffusivity() * lap - adv - params.reaction() * f(x)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
