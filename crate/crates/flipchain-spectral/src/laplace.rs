//! Frequency-domain reconstruction of the boundary momenta.
//!
//! The averaged dynamics is linear, so the transforms of p_0 - p_n and
//! p_0 + p_n are closed-form rational expressions in the initial mean
//! spectra and the tension transform. Inverting them numerically along the
//! imaginary axis gives the boundary signals by a route entirely
//! independent of time stepping; comparing against the site-space moment
//! integration cross-validates both.

use crate::functions::{e_diff_at, e_sum_at, mode_denominator};
use flipchain_core::{dft_forward_real, idx_p, idx_r, phase_dim, ModelParams};
use flipchain_moments::{evolve, MomentState};
use num_complex::Complex64;

const TAU: f64 = std::f64::consts::TAU;

/// Transform of the two-phase tension protocol: constant `tau` on [0, t*],
/// zero afterwards. Bounded at zero frequency, which keeps the inversion
/// integrand absolutely integrable.
pub fn two_phase_tension_transform(lambda: Complex64, tau: f64, t_star: f64) -> Complex64 {
    tau * (1.0 - (-lambda * t_star).exp()) / lambda
}

/// Exact transforms of the boundary difference and sum signals at `lambda`,
/// given the padded initial mean spectra (n + 1 entries each, frequency
/// k_j = j/(n+1)) and the tension transform value at `lambda`.
pub fn boundary_transforms(
    lambda: Complex64,
    n: usize,
    params: &ModelParams,
    rhat: &[Complex64],
    phat: &[Complex64],
    tension_transform: Complex64,
) -> (Complex64, Complex64) {
    let m = (n + 1) as f64;
    let n2 = (n * n) as f64;
    let scaled = lambda / n2;
    let gamma = params.gamma;
    let mut r_diff = Complex64::new(0.0, 0.0);
    let mut p_diff = Complex64::new(0.0, 0.0);
    let mut t_diff = Complex64::new(0.0, 0.0);
    let mut r_sum = Complex64::new(0.0, 0.0);
    let mut p_sum = Complex64::new(0.0, 0.0);
    let mut t_sum = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        let k = j as f64 / m;
        let den = mode_denominator(scaled, k, gamma);
        let s = (std::f64::consts::PI * k).sin();
        let c = (std::f64::consts::PI * k).cos();
        let phase = Complex64::from_polar(1.0, -TAU * k);
        r_diff += (scaled + 2.0 * gamma) * rhat[j] / den;
        p_diff += (1.0 - phase) * phat[j] / den;
        t_diff += s * s / den;
        r_sum += (TAU * k).sin() * rhat[j] / den;
        p_sum += (1.0 + phase) * phat[j] / den;
        t_sum += c * c / den;
    }
    let ed = e_diff_at(scaled, n, gamma, params.gamma_tilde);
    let es = e_sum_at(scaled, n, gamma, params.gamma_tilde);
    let diff = (r_diff + p_diff) / (m * n2 * ed) - 2.0 * tension_transform * t_diff / (m * ed);
    let sum = Complex64::new(0.0, 2.0) * r_sum / (m * n2 * es)
        + lambda * p_sum / (m * n2 * n2 * es)
        + 2.0 * lambda * tension_transform * t_sum / (m * n2 * es);
    (diff, sum)
}

/// Boundary difference and sum signals sampled on a time grid.
#[derive(Debug, Clone)]
pub struct BoundarySignals {
    pub t: Vec<f64>,
    /// p_0(t) - p_n(t)
    pub diff: Vec<f64>,
    /// p_0(t) + p_n(t)
    pub sum: Vec<f64>,
}

/// Inverts the boundary transforms by midpoint quadrature on the imaginary
/// axis: frequencies (j + 1/2) * cutoff/nodes, so zero is never sampled,
/// folded with the conjugate half-axis. The initial data must make the
/// transforms decay: the stretch means must sum to zero (no zero-frequency
/// spectral weight) and the initial momentum means must vanish (no jump at
/// t = 0). The tension follows the two-phase protocol with switch-off at
/// `t_star`; the reconstruction is valid on [0, t_star].
pub fn invert_boundary_signals(
    params: &ModelParams,
    r0: &[f64],
    p0: &[f64],
    t_star: f64,
    t_grid: &[f64],
    nodes: usize,
    cutoff: f64,
) -> BoundarySignals {
    let n = params.n;
    assert_eq!(r0.len(), n, "one stretch mean per interior bond");
    assert_eq!(p0.len(), n + 1, "one momentum mean per site");
    assert!(t_star > 0.0 && nodes > 0 && cutoff > 0.0);
    assert!(
        t_grid.iter().all(|&t| (0.0..=t_star + 1e-12).contains(&t)),
        "reconstruction window is [0, t_star]"
    );
    let rsum: f64 = r0.iter().sum();
    let rscale: f64 = r0.iter().map(|v| v.abs()).sum::<f64>().max(1e-300);
    assert!(
        rsum.abs() <= 1e-9 * rscale.max(1.0),
        "stretch means must sum to zero for an integrable transform"
    );
    assert!(
        p0.iter().all(|&v| v == 0.0),
        "nonzero initial momentum means put a jump at t = 0"
    );

    let mut padded_r = vec![0.0; n + 1];
    padded_r[1..].copy_from_slice(r0);
    let rhat = dft_forward_real(&padded_r);
    let phat = vec![Complex64::new(0.0, 0.0); n + 1];

    let deta = cutoff / nodes as f64;
    let mut transforms = Vec::with_capacity(nodes);
    for j in 0..nodes {
        let eta = (j as f64 + 0.5) * deta;
        let lambda = Complex64::new(0.0, eta);
        let tt = two_phase_tension_transform(lambda, params.tau_plus, t_star);
        transforms.push(boundary_transforms(lambda, n, params, &rhat, &phat, tt));
    }

    let mut diff = Vec::with_capacity(t_grid.len());
    let mut sum = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut acc_d = 0.0;
        let mut acc_s = 0.0;
        for (j, (td, ts)) in transforms.iter().enumerate() {
            let eta = (j as f64 + 0.5) * deta;
            let phase = Complex64::from_polar(1.0, eta * t);
            acc_d += (phase * td).re;
            acc_s += (phase * ts).re;
        }
        diff.push(acc_d * deta / std::f64::consts::PI);
        sum.push(acc_s * deta / std::f64::consts::PI);
    }
    BoundarySignals { t: t_grid.to_vec(), diff, sum }
}

/// Same signals from the site-space moment integration.
pub fn time_domain_boundary_signals(
    params: &ModelParams,
    r0: &[f64],
    p0: &[f64],
    t_grid: &[f64],
    dtau: f64,
) -> BoundarySignals {
    let n = params.n;
    assert_eq!(r0.len(), n);
    assert_eq!(p0.len(), n + 1);
    let mut mean = vec![0.0; phase_dim(n)];
    for x in 1..=n {
        mean[idx_r(n, x)] = r0[x - 1];
    }
    for x in 0..=n {
        mean[idx_p(n, x)] = p0[x];
    }
    let mut ms = MomentState::deterministic(n, mean);
    let mut diff = Vec::with_capacity(t_grid.len());
    let mut sum = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        assert!(t >= ms.t_macro - 1e-15, "time grid must not decrease");
        if t > ms.t_macro {
            ms = evolve(ms, params, t, dtau).expect("mean flow stayed bounded");
        }
        let a = ms.mean[idx_p(n, 0)];
        let b = ms.mean[idx_p(n, n)];
        diff.push(a - b);
        sum.push(a + b);
    }
    BoundarySignals { t: t_grid.to_vec(), diff, sum }
}

fn l2_distance(t: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..t.len() {
        let ya = a[i] - b[i];
        let yb = a[i - 1] - b[i - 1];
        acc += 0.5 * (ya * ya + yb * yb) * (t[i] - t[i - 1]);
    }
    acc.sqrt()
}

/// Crosscheck report: both routes on the same grid, their L2 distances,
/// and the same distances with half the quadrature nodes as a convergence
/// control.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub time_domain: BoundarySignals,
    pub inverted: BoundarySignals,
    pub diff_l2: f64,
    pub sum_l2: f64,
    pub diff_l2_half_nodes: f64,
    pub sum_l2_half_nodes: f64,
    /// True when doubling the node count did not increase either distance:
    /// the quadrature has converged to its truncation floor.
    pub converged: bool,
    /// Crude truncation tail estimate for the difference channel,
    /// 2 |tau| n^2 / (pi * cutoff).
    pub tail_bound: f64,
}

/// Runs both routes and reports their L2[0, t*] discrepancies on `t_grid`.
pub fn boundary_laplace_crosscheck(
    params: &ModelParams,
    r0: &[f64],
    p0: &[f64],
    t_star: f64,
    t_grid: &[f64],
    nodes: usize,
    cutoff: f64,
) -> CrosscheckReport {
    let time_domain = time_domain_boundary_signals(params, r0, p0, t_grid, 0.01);
    let inverted = invert_boundary_signals(params, r0, p0, t_star, t_grid, nodes, cutoff);
    let halved = invert_boundary_signals(params, r0, p0, t_star, t_grid, nodes / 2, cutoff);
    let diff_l2 = l2_distance(t_grid, &time_domain.diff, &inverted.diff);
    let sum_l2 = l2_distance(t_grid, &time_domain.sum, &inverted.sum);
    let diff_l2_half_nodes = l2_distance(t_grid, &time_domain.diff, &halved.diff);
    let sum_l2_half_nodes = l2_distance(t_grid, &time_domain.sum, &halved.sum);
    let converged = diff_l2 <= diff_l2_half_nodes * 1.0001 + 1e-15
        && sum_l2 <= sum_l2_half_nodes * 1.0001 + 1e-15;
    let tail_bound =
        2.0 * params.tau_plus.abs() * (params.n * params.n) as f64 / (std::f64::consts::PI * cutoff);
    CrosscheckReport {
        time_domain,
        inverted,
        diff_l2,
        sum_l2,
        diff_l2_half_nodes,
        sum_l2_half_nodes,
        converged,
        tail_bound,
    }
}
