mod common;

use std::f64::consts::PI;

use boundary_particle::kernels::{KernelFamily, KernelKind};
use boundary_particle::operator::{make_params, OperatorParams};
use common::{fd_gradient, fd_laplacian, fd_operator, rel, rng};
use rand::Rng;

/// Random operator with wavenumber `tau`.
fn random_params<R: Rng>(r: &mut R, n: usize, tau: f64) -> OperatorParams {
    let d: f64 = r.gen_range(0.5..2.0);
    let dir: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
    // |v|/2D strictly below τ so that κ > 0 stays free to vary
    let drift = r.gen_range(0.0..0.95) * tau;
    let v: Vec<f64> = dir.iter().map(|c| c / norm * drift * 2.0 * d).collect();
    let kappa = d * (tau * tau - drift * drift);
    make_params(d, &v, kappa, n).unwrap()
}

fn random_offset<R: Rng>(r: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let dir: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
    let len = r.gen_range(lo..hi);
    dir.iter().map(|c| c / norm * len).collect()
}

fn step_for(offset: &[f64]) -> f64 {
    let r = offset.iter().map(|c| c * c).sum::<f64>().sqrt();
    (r / 200.0).min(1e-3)
}

#[test]
fn order_zero_general_solution_is_annihilated() {
    let mut r = rng(11);
    for sample in 0..100 {
        let n = 2 + sample % 2;
        let tau = r.gen_range(0.5..5.0);
        let params = random_params(&mut r, n, tau);
        let family = KernelFamily::general(params.clone(), 0, 0.0).unwrap();
        let source = vec![0.0; n];
        let x = random_offset(&mut r, n, 0.05, 2.0);
        let u = |p: &[f64]| family.value(0, p, &source).unwrap();
        let residual = fd_operator(&params, &u, &x, step_for(&x));
        assert!(
            residual.abs() <= 1e-5 * u(&x).abs(),
            "n={n} τ={tau}: residual {residual:e} vs value {:e}",
            u(&x)
        );
    }
}

#[test]
fn operator_lowers_kernel_order_by_one() {
    let mut r = rng(12);
    for kind in [KernelKind::General, KernelKind::Fundamental] {
        for sample in 0..50 {
            let n = 2 + sample % 2;
            let tau = r.gen_range(0.5..5.0);
            let params = random_params(&mut r, n, tau);
            let family = KernelFamily::new(params.clone(), kind, 3, 0.0).unwrap();
            let source: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
            let offset = random_offset(&mut r, n, 0.05, 2.0);
            let x: Vec<f64> = source.iter().zip(&offset).map(|(a, b)| a + b).collect();
            for m in 1..=3 {
                let u = |p: &[f64]| family.value(m, p, &source).unwrap();
                let lowered = fd_operator(&params, &u, &x, step_for(&offset));
                let expected = family.value(m - 1, &x, &source).unwrap();
                assert!(
                    rel(lowered, expected) <= 1e-5,
                    "{kind:?} n={n} m={m}: {lowered:e} vs {expected:e}"
                );
            }
        }
    }
}

#[test]
fn twofold_operator_recovers_order_zero() {
    let params = make_params(1.0, &[0.6, -0.2], 1.3, 2).unwrap();
    let family = KernelFamily::general(params.clone(), 2, 0.0).unwrap();
    let source = [0.1, -0.3];
    let h = 1e-2;
    let inner = |p: &[f64]| {
        let u = |q: &[f64]| family.value(2, q, &source).unwrap();
        fd_operator(&params, &u, p, h)
    };
    for x in [[0.7, 0.2], [-0.4, 0.9], [1.5, -1.0]] {
        let twice = fd_operator(&params, &inner, &x, h);
        let expected = family.value(0, &x, &source).unwrap();
        assert!(rel(twice, expected) < 1e-4, "{twice:e} vs {expected:e}");
    }
}

#[test]
fn exponential_substitution_gives_modified_helmholtz() {
    let mut r = rng(13);
    for sample in 0..40 {
        let n = 2 + sample % 2;
        let tau = r.gen_range(0.5..4.0);
        let params = random_params(&mut r, n, tau);
        let drift = params.drift();
        let family = KernelFamily::general(params.clone(), 0, 0.0).unwrap();
        let source: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let offset = random_offset(&mut r, n, 0.1, 1.5);
        let x: Vec<f64> = source.iter().zip(&offset).map(|(a, b)| a + b).collect();
        // w = u e^{−v·(x − x_s)/2D}
        let w = |p: &[f64]| {
            let dot: f64 = drift
                .iter()
                .zip(p.iter().zip(&source))
                .map(|(d, (a, b))| d * (a - b))
                .sum();
            family.value(0, p, &source).unwrap() * (-dot).exp()
        };
        let h = step_for(&offset);
        let residual = fd_laplacian(&w, &x, h) - tau * tau * w(&x);
        assert!(
            residual.abs() <= 1e-5 * tau * tau * w(&x).abs(),
            "residual {residual:e}"
        );

        // the reversed convention x_s − x fails the same test whenever v ≠ 0
        let w_reversed = |p: &[f64]| {
            let dot: f64 = drift
                .iter()
                .zip(p.iter().zip(&source))
                .map(|(d, (a, b))| d * (b - a))
                .sum();
            family.value(0, p, &source).unwrap() * (-dot).exp()
        };
        let speed = params.speed();
        if speed > 0.1 {
            let bad = fd_laplacian(&w_reversed, &x, h) - tau * tau * w_reversed(&x);
            assert!(bad.abs() > 1e-3 * tau * tau * w_reversed(&x).abs());
        }
    }
}

#[test]
fn spatial_kernels_match_hyperbolic_closed_forms() {
    let mut r = rng(14);
    for _ in 0..20 {
        let tau = r.gen_range(0.5..4.0);
        let params = random_params(&mut r, 3, tau);
        let family = KernelFamily::general(params.clone(), 2, 0.0).unwrap();
        let offset = random_offset(&mut r, 3, 1.0 / tau, 5.0 / tau);
        let z = tau * offset.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dot: f64 = params.drift().iter().zip(&offset).map(|(d, c)| d * c).sum();
        let prefactor = (2.0 / PI).sqrt() * dot.exp();
        let a = family.amplitudes();
        let closed = [
            a[0] * prefactor * z.sinh() / z,
            a[1] * prefactor * (z * z.cosh() - z.sinh()) / z,
            a[2] * prefactor * (z * z * z.sinh() + 3.0 * z.sinh() - 3.0 * z * z.cosh()) / z,
        ];
        for (m, expected) in closed.iter().enumerate() {
            let got = family.value(m, &offset, &[0.0; 3]).unwrap();
            assert!(
                rel(got, *expected) <= 1e-12,
                "m={m} z={z}: {got:e} vs {expected:e}"
            );
        }
    }
}

#[test]
fn scaling_is_an_exact_rescale() {
    let mut r = rng(15);
    for _ in 0..50 {
        let tau = r.gen_range(0.5..5.0);
        let params = random_params(&mut r, 2, tau);
        let c = r.gen_range(0.1..3.0);
        let unscaled = KernelFamily::general(params.clone(), 3, 0.0).unwrap();
        let scaled = unscaled.with_scaling_length(c).unwrap();
        let x = random_offset(&mut r, 2, 0.0, 2.0);
        for m in 0..=3 {
            let a = unscaled.value(m, &x, &[0.0, 0.0]).unwrap();
            let b = scaled.value(m, &x, &[0.0, 0.0]).unwrap() * (tau * c).exp();
            assert!(rel(b, a) <= 1e-13, "m={m}: {a:e} vs {b:e}");
        }
        let fu = KernelFamily::fundamental(params.clone(), 1, 0.0).unwrap();
        let fs = fu.with_scaling_length(c).unwrap();
        let y = random_offset(&mut r, 2, 0.1, 2.0);
        let a = fu.value(1, &y, &[0.0, 0.0]).unwrap();
        let b = fs.value(1, &y, &[0.0, 0.0]).unwrap() * (-tau * c).exp();
        assert!(rel(b, a) <= 1e-13);
    }
}

#[test]
fn general_grows_and_fundamental_decays() {
    let params = make_params(1.0, &[0.0, 0.0], 2.0, 2).unwrap();
    let g = KernelFamily::general(params.clone(), 0, 0.0).unwrap();
    let f = KernelFamily::fundamental(params, 0, 0.0).unwrap();
    let mut last_g = 0.0;
    let mut last_f = f64::INFINITY;
    for k in 1..200 {
        let x = [0.05 * k as f64, 0.0];
        let gv = g.value(0, &x, &[0.0, 0.0]).unwrap();
        let fv = f.value(0, &x, &[0.0, 0.0]).unwrap();
        assert!(gv > last_g && fv < last_f);
        last_g = gv;
        last_f = fv;
    }
}

#[test]
fn analytic_gradients_match_finite_differences() {
    let mut r = rng(16);
    for kind in [KernelKind::General, KernelKind::Fundamental] {
        for sample in 0..40 {
            let n = 2 + sample % 2;
            let tau = r.gen_range(0.5..5.0);
            let params = random_params(&mut r, n, tau);
            let family = KernelFamily::new(params, kind, 3, 0.3).unwrap();
            let m = sample % 4;
            let offset = random_offset(&mut r, n, 0.05, 2.0);
            let source = vec![0.0; n];
            let u = |p: &[f64]| family.value(m, p, &source).unwrap();
            let fd = fd_gradient(&u, &offset, step_for(&offset));
            let an = family.gradient(m, &offset, &source).unwrap();
            let scale = fd.iter().map(|c| c.abs()).fold(0.0, f64::max);
            for (a, b) in an.iter().zip(&fd) {
                assert!(
                    (a - b).abs() <= 1e-6 * scale,
                    "{kind:?} n={n} m={m}: {an:?} vs {fd:?}"
                );
            }
        }
    }
}

#[test]
fn gradient_of_planar_general_kernel_at_source() {
    let params = make_params(1.0, &[0.8, -0.4], 1.0, 2).unwrap();
    let family = KernelFamily::general(params.clone(), 0, 0.5).unwrap();
    let x = [0.2, 0.2];
    let g = family.gradient(0, &x, &x).unwrap();
    let scale = (-params.tau() * 0.5).exp();
    // limit of the series: the radial term is O(τ²r/2)
    let near = family.gradient(0, &[0.2 + 1e-7, 0.2], &x).unwrap();
    assert!(rel(g[0], 0.4 * scale) < 1e-15 && rel(g[1], -0.2 * scale) < 1e-15);
    assert!((near[0] - g[0]).abs() < 1e-6 && (near[1] - g[1]).abs() < 1e-6);
}

#[test]
fn dirac_normalized_flux_is_minus_one() {
    // 2D: D ∮ ∇u·n ds − ∮ (v·n) u ds − κ∫u → −1 as the circle shrinks
    let params = make_params(1.5, &[0.7, -0.3], 0.8, 2).unwrap();
    let family = KernelFamily::fundamental_dirac(params.clone(), 0, 0.0).unwrap();
    let eps = 1e-5;
    let n = 64;
    let mut flux = 0.0;
    for k in 0..n {
        let th = 2.0 * PI * k as f64 / n as f64;
        let normal = [th.cos(), th.sin()];
        let x = [eps * normal[0], eps * normal[1]];
        let g = family.gradient(0, &x, &[0.0, 0.0]).unwrap();
        let u = family.value(0, &x, &[0.0, 0.0]).unwrap();
        let vn = params.velocity()[0] * normal[0] + params.velocity()[1] * normal[1];
        flux += (params.diffusivity() * (g[0] * normal[0] + g[1] * normal[1]) - vn * u) * eps;
    }
    flux *= 2.0 * PI / n as f64;
    assert!((flux + 1.0).abs() < 1e-3, "2D flux {flux}");

    // 3D sphere
    let params = make_params(0.7, &[0.3, 0.1, -0.2], 1.1, 3).unwrap();
    let family = KernelFamily::fundamental_dirac(params.clone(), 0, 0.0).unwrap();
    let (nt, np) = (40, 80);
    let mut flux = 0.0;
    for i in 0..nt {
        let th = PI * (i as f64 + 0.5) / nt as f64;
        for j in 0..np {
            let ph = 2.0 * PI * j as f64 / np as f64;
            let normal = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            let x: Vec<f64> = normal.iter().map(|c| c * eps).collect();
            let g = family.gradient(0, &x, &[0.0; 3]).unwrap();
            let u = family.value(0, &x, &[0.0; 3]).unwrap();
            let gn: f64 = g.iter().zip(&normal).map(|(a, b)| a * b).sum();
            let vn: f64 = params
                .velocity()
                .iter()
                .zip(&normal)
                .map(|(a, b)| a * b)
                .sum();
            let area = eps * eps * th.sin() * (PI / nt as f64) * (2.0 * PI / np as f64);
            flux += (params.diffusivity() * gn - vn * u) * area;
        }
    }
    assert!((flux + 1.0).abs() < 1e-3, "3D flux {flux}");
}

#[test]
fn spatial_fundamental_singularity_is_inverse_distance() {
    let params = make_params(1.0, &[0.4, 0.0, -0.2], 2.0, 3).unwrap();
    let tau = params.tau();
    let family = KernelFamily::fundamental(params, 3, 0.0).unwrap();
    let dir = [0.6, 0.0, 0.8];
    for m in 0..=3 {
        let g = |r: f64| {
            let x: Vec<f64> = dir.iter().map(|c| c * r).collect();
            r * family.value(m, &x, &[0.0; 3]).unwrap()
        };
        // Richardson extrapolation of r·u(r) to r = 0, assuming an O(r) error
        let h = 1e-4;
        let limit = 2.0 * g(h / 2.0) - g(h);
        // Γ(m + 1/2) 2^{m − 1/2} B_m / τ
        let gamma: f64 = (0..m).fold(PI.sqrt(), |acc, k| acc * (k as f64 + 0.5));
        let expected = family.amplitudes()[m] * gamma * 2f64.powf(m as f64 - 0.5) / tau;
        assert!(limit != 0.0 && limit.is_finite());
        assert!(
            rel(limit, expected) < 1e-6,
            "m={m}: {limit:e} vs {expected:e}"
        );
    }
}

#[test]
fn planar_first_order_fundamental_has_finite_limit() {
    let params = make_params(1.0, &[0.4, 0.3], 2.0, 2).unwrap();
    let family = KernelFamily::fundamental(params, 2, 0.0).unwrap();
    let at_source = family.value(1, &[0.0, 0.0], &[0.0, 0.0]).unwrap();
    let b1 = family.amplitudes()[1];
    assert!(rel(at_source, b1) < 1e-15);
    let mut previous = f64::INFINITY;
    for k in 2..9 {
        let r = 10f64.powi(-k);
        let v = family.value(1, &[r, 0.0], &[0.0, 0.0]).unwrap();
        let gap = (v - at_source).abs();
        assert!(gap < previous);
        previous = gap;
    }
    assert!(previous < 1e-6 * at_source.abs());
}
