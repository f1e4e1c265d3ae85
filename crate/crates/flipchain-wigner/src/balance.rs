//! Energy balance of the spectral functional along exact-moments paths.
//!
//! Along the moment flow, half the time derivative of the spectral energy
//! splits into four terms, all readable from the mean and the fluctuation
//! covariance: thermostat gain at the two boundary sites, kinetic injection
//! by the squared mean momenta through the flip noise, boundary dissipation
//! of cross and momentum correlations, and bulk dissipation of the same
//! correlations by the flips. The residual check differentiates the
//! functional with centered differences and subtracts the four terms.

use crate::transform::{energy_functional, wigner_from_cov};
use flipchain_core::{idx_p, idx_r, ModelParams};
use flipchain_moments::{fluctuation_cov, MomentState};

/// Spectral energy of a moment state's fluctuation covariance.
pub fn etilde(ms: &MomentState) -> f64 {
    let c = fluctuation_cov(ms);
    energy_functional(&wigner_from_cov(&c, ms.n, ms.t_macro))
}

/// The four right-hand-side terms of the balance identity, each already
/// carrying the n^2/(n+1) time scaling, so that their sum equals
/// (1/2) d/dt of the spectral energy:
///
///   [0] thermostat gain     2 gt sum_{x in {0,n}} (T_x - theta_x) theta_x
///   [1] kinetic injection   4 g  sum_x  pbar_x^2 theta_x
///   [2] boundary mixing    -2 gt sum_{x in {0,n}} (sum_y Cpr_xy^2
///                                + sum_{y != x} Cpp_xy^2)
///   [3] bulk mixing        -4 g  (sum_{x != y} Cpp_xy^2 + sum_{x,y} Cpr_xy^2)
///
/// with theta_x = Cpp_xx the kinetic temperature profile.
pub fn balance_terms(ms: &MomentState, params: &ModelParams) -> [f64; 4] {
    let n = ms.n;
    assert_eq!(params.n, n, "state and parameters disagree on n");
    let d = ms.dim();
    let c = fluctuation_cov(ms);
    let cpp = |x: usize, y: usize| c[idx_p(n, x) * d + idx_p(n, y)];
    let cpr = |x: usize, y: usize| c[idx_p(n, x) * d + idx_r(n, y)];
    let theta = |x: usize| cpp(x, x);

    let mut gain = 0.0;
    let mut boundary = 0.0;
    for x in [0, n] {
        gain += (params.boundary_temp(x) - theta(x)) * theta(x);
        let mut mix = 0.0;
        for y in 1..=n {
            mix += cpr(x, y) * cpr(x, y);
        }
        for y in 0..=n {
            if y != x {
                mix += cpp(x, y) * cpp(x, y);
            }
        }
        boundary += mix;
    }

    let mut inject = 0.0;
    for x in 0..=n {
        inject += ms.mean[idx_p(n, x)].powi(2) * theta(x);
    }

    let mut bulk = 0.0;
    for x in 0..=n {
        for y in 0..=n {
            if y != x {
                bulk += cpp(x, y) * cpp(x, y);
            }
        }
        for y in 1..=n {
            bulk += cpr(x, y) * cpr(x, y);
        }
    }

    let scale = (n * n) as f64 / (n + 1) as f64;
    [
        scale * 2.0 * params.gamma_tilde * gain,
        scale * 4.0 * params.gamma * inject,
        -scale * 2.0 * params.gamma_tilde * boundary,
        -scale * 4.0 * params.gamma * bulk,
    ]
}

/// Largest deviation of (E~(t+dt) - E~(t-dt)) / (4 dt) from the four-term
/// right side over the interior recorded times of a uniformly spaced moment
/// path. Converges at second order in the recording spacing.
pub fn wigner_balance_residual(path: &[MomentState], params: &ModelParams, dt: f64) -> f64 {
    assert!(path.len() >= 3, "need at least three recorded times");
    for w in path.windows(2) {
        let gap = w[1].t_macro - w[0].t_macro;
        assert!(
            (gap - dt).abs() <= 1e-9 * (1.0 + dt),
            "path spacing {gap} does not match dt = {dt}"
        );
    }
    let energies: Vec<f64> = path.iter().map(etilde).collect();
    let mut worst = 0.0f64;
    for i in 1..path.len() - 1 {
        let fd = (energies[i + 1] - energies[i - 1]) / (4.0 * dt);
        let rhs: f64 = balance_terms(&path[i], params).iter().sum();
        worst = worst.max((fd - rhs).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use flipchain_moments::evolve_with;

    /// Collects a uniformly spaced moment path by subsampling the per-step
    /// observer every `stride` steps.
    fn record_path(
        ms: MomentState,
        params: &ModelParams,
        t_target: f64,
        dtau: f64,
        stride: usize,
    ) -> Vec<MomentState> {
        let mut path = Vec::new();
        let mut step = 0usize;
        evolve_with(ms, params, t_target, dtau, |s| {
            if step % stride == 0 {
                path.push(s.clone());
            }
            step += 1;
        })
        .expect("moment flow stayed bounded");
        path
    }

    #[test]
    fn equilibrium_path_has_zero_residual() {
        let n = 8;
        let t = 1.3;
        let params = ModelParams::new(n, 0.7, 1.1, t, t, 0.0).unwrap();
        let ms = MomentState::from_diagonal_cov(n, &vec![t; 2 * n + 1]);
        let path = record_path(ms, &params, 0.02, 0.05, 1);
        let dt = path[1].t_macro - path[0].t_macro;
        let res = wigner_balance_residual(&path, &params, dt);
        assert!(res < 1e-8, "equilibrium residual {res}");
    }

    #[test]
    fn all_terms_vanish_in_equilibrium() {
        let n = 6;
        let t = 0.9;
        let params = ModelParams::new(n, 1.0, 1.0, t, t, 0.0).unwrap();
        let ms = MomentState::from_diagonal_cov(n, &vec![t; 2 * n + 1]);
        for (i, term) in balance_terms(&ms, &params).iter().enumerate() {
            assert_eq!(*term, 0.0, "term {i}");
        }
    }
}
