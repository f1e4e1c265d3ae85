//! Averaged decay kernels controlling the boundary-to-bulk propagation.
//!
//! The momentum representation formula convolves the boundary signals with
//! kernels whose moduli are bounded by the averaged sums below: a power of
//! |sin(pi k)| divided by the eigenvalue splitting, damped by the slow-branch
//! rate 2 sin^2(pi k)/gamma and the fast-branch rate gamma.

use crate::dispersion::dispersion;

/// Averaged decay kernel of order `ell` (0, 1 or 2) at time `t >= 0`.
/// Panics when some lattice frequency sits at the critical damping point
/// 4 sin^2(pi k) = gamma^2, where the eigenvalue splitting degenerates.
pub fn decay_kernel(ell: usize, t: f64, n: usize, gamma: f64) -> f64 {
    assert!(ell <= 2, "kernel order {ell} out of range");
    assert!(t >= 0.0, "negative time");
    let m = (n + 1) as f64;
    let mut acc = 0.0;
    for j in 0..=n {
        let k = j as f64 / m;
        let s = (std::f64::consts::PI * k).sin().abs();
        let disc = gamma * gamma - 4.0 * s * s;
        assert!(
            disc.abs() > 1e-14 * gamma * gamma,
            "degenerate eigenvalue splitting at k = {k}: 4 sin^2(pi k) = gamma^2"
        );
        let d = dispersion(k, gamma);
        let split = (d.lambda_minus - d.lambda_plus).norm();
        acc += s.powi(ell as i32) / split
            * ((-2.0 * t * s * s / gamma).exp() + (-gamma * t).exp());
    }
    acc / m
}

/// Largest value of decay_kernel(ell, t) * (1 + t)^{(1+ell)/2} over `ts`:
/// the smallest constant making the algebraic decay bound hold on that grid.
pub fn decay_kernel_fit(ell: usize, n: usize, gamma: f64, ts: &[f64]) -> f64 {
    ts.iter()
        .map(|&t| decay_kernel(ell, t, n, gamma) * (1.0 + t).powf((1.0 + ell as f64) / 2.0))
        .fold(0.0, f64::max)
}
