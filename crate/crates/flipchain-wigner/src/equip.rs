//! Time-integrated equipartition defect along a covariance path.
//!
//! The functional is int (1/n) sum_x G(s, x/n) E[rt_x^2 - pt_x^2] ds,
//! evaluated two ways: directly on the lattice, and through the spectra via
//! V(eta) = sum_k (Y+ + Y-)(eta, k), which is the DFT of the site defect
//! profile, paired with the DFT of G by the averaged Parseval identity. Both
//! routes are exact quadratures of the same trapezoid-in-time sum and must
//! agree to rounding.

use crate::transform::wigner_from_cov;
use crate::types::TestFunction2D;
use flipchain_core::{dft_forward_real, idx_p, idx_r, phase_dim};
use num_complex::Complex64;

/// One fluctuation covariance snapshot.
#[derive(Debug, Clone)]
pub struct CovSample {
    pub t: f64,
    pub cov: Vec<f64>,
}

/// Site profile of E[rt_x^2 - pt_x^2], x = 0..=n, with rt_0 = 0.
fn defect_profile(c: &[f64], n: usize) -> Vec<f64> {
    let d = phase_dim(n);
    (0..=n)
        .map(|x| {
            let vr = if x == 0 {
                0.0
            } else {
                c[idx_r(n, x) * d + idx_r(n, x)]
            };
            let vp = c[idx_p(n, x) * d + idx_p(n, x)];
            vr - vp
        })
        .collect()
}

fn time_trapz(times: &[f64], vals: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..times.len() {
        acc += 0.5 * (vals[i] + vals[i - 1]) * (times[i] - times[i - 1]);
    }
    acc
}

fn check_path(path: &[CovSample], n: usize) {
    assert!(!path.is_empty(), "empty covariance path");
    let d = phase_dim(n);
    for s in path {
        assert_eq!(s.cov.len(), d * d, "covariance shape mismatch at t = {}", s.t);
    }
}

/// Lattice-sum evaluation.
pub fn equipartition_functional(path: &[CovSample], n: usize, g: &TestFunction2D) -> f64 {
    check_path(path, n);
    let times: Vec<f64> = path.iter().map(|s| s.t).collect();
    let vals: Vec<f64> = path
        .iter()
        .map(|s| {
            let defect = defect_profile(&s.cov, n);
            let gs = g.site_values(s.t, n);
            let sum: f64 = defect.iter().zip(&gs).map(|(d, w)| d * w).sum();
            sum / n as f64
        })
        .collect();
    time_trapz(&times, &vals)
}

/// Spectral evaluation through V(eta) = sum_k (Y+ + Y-)(eta, k).
pub fn equipartition_functional_fourier(
    path: &[CovSample],
    n: usize,
    g: &TestFunction2D,
) -> f64 {
    check_path(path, n);
    let m = n + 1;
    let times: Vec<f64> = path.iter().map(|s| s.t).collect();
    let vals: Vec<f64> = path
        .iter()
        .map(|s| {
            let ws = wigner_from_cov(&s.cov, n, s.t);
            let mut v = vec![Complex64::new(0.0, 0.0); m];
            for eta in 0..m {
                for k in 0..m {
                    v[eta] += ws.yplus[eta * m + k] + ws.yminus[eta * m + k];
                }
            }
            let ghat = dft_forward_real(&g.site_values(s.t, n));
            let paired: Complex64 = ghat.iter().zip(&v).map(|(a, b)| a * b.conj()).sum();
            paired.re / (n as f64 * m as f64)
        })
        .collect();
    time_trapz(&times, &vals)
}
