//! Frequency-domain response functions of the boundary momenta.
//!
//! On the imaginary axis the Laplace transforms of p_0 -+ p_n factor into
//! channel denominators (`e_diff`, `e_sum`) and source terms driven by the
//! initial stretch spectrum, the initial momentum spectrum, and the boundary
//! tension. Everything here is an averaged lattice sum over k in {j/(n+1)},
//! with the averaged sum carrying the 1/(n+1) weight.

use flipchain_core::ModelParams;
use num_complex::Complex64;

const TAU: f64 = std::f64::consts::TAU;

/// Averaged lattice sum (1/(n+1)) sum_{j=0..n} f(k_j), k_j = j/(n+1).
pub fn averaged_sum<F: FnMut(f64) -> Complex64>(n: usize, mut f: F) -> Complex64 {
    let m = (n + 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        acc += f(j as f64 / m);
    }
    acc / m
}

/// Quadratic denominator of the frequency-k block, lambda^2 + 2 gamma lambda
/// + 4 sin^2(pi k), evaluated at complex lambda.
pub fn mode_denominator(lambda: Complex64, k: f64, gamma: f64) -> Complex64 {
    let s = (TAU * 0.5 * k).sin();
    lambda * (lambda + 2.0 * gamma) + 4.0 * s * s
}

/// Denominator of the difference channel p_0 - p_n at complex rate `lambda`:
/// averaged sum of (lambda + 2 gamma + 2 gamma_tilde sin^2(pi k)) over the
/// mode denominator.
pub fn e_diff_at(lambda: Complex64, n: usize, gamma: f64, gamma_tilde: f64) -> Complex64 {
    averaged_sum(n, |k| {
        let s = (std::f64::consts::PI * k).sin();
        (lambda + 2.0 * gamma + 2.0 * gamma_tilde * s * s) / mode_denominator(lambda, k, gamma)
    })
}

/// Denominator of the sum channel p_0 + p_n at complex rate `lambda`.
/// Equals 1 + 2 gamma_tilde lambda times the averaged sum of
/// cos^2(pi k) over the mode denominator.
pub fn e_sum_at(lambda: Complex64, n: usize, gamma: f64, gamma_tilde: f64) -> Complex64 {
    1.0 + 2.0
        * gamma_tilde
        * lambda
        * averaged_sum(n, |k| {
            let c = (std::f64::consts::PI * k).cos();
            c * c / mode_denominator(lambda, k, gamma)
        })
}

/// All boundary response functions at real frequency `eta`, given the
/// initial mean spectra on the padded lattice of n + 1 sites.
#[derive(Debug, Clone)]
pub struct SpectralEval {
    pub eta: f64,
    /// Difference-channel denominator.
    pub e_diff: Complex64,
    /// Sum-channel denominator; real part is at least 1.
    pub e_sum: Complex64,
    /// Tension source in the difference channel: averaged sum of
    /// 2 sin^2(pi k) over the mode denominator.
    pub tension_diff: Complex64,
    /// Tension source in the sum channel: averaged sum of 2 cos^2(pi k)
    /// over the mode denominator.
    pub tension_sum: Complex64,
    /// Initial-stretch source in the difference channel.
    pub stretch_diff: Complex64,
    /// Initial-momentum source in the difference channel.
    pub momentum_diff: Complex64,
    /// Initial-stretch source in the sum channel.
    pub stretch_sum: Complex64,
    /// Initial-momentum source in the sum channel.
    pub momentum_sum: Complex64,
}

/// Evaluates every response function at frequency `eta` (nonzero: the k = 0
/// mode denominator vanishes at eta = 0). `rhat` and `phat` are the initial
/// mean spectra, indexed by j with k_j = j/(n+1); both must have n + 1
/// entries.
pub fn eval_functions(
    eta: f64,
    n: usize,
    params: &ModelParams,
    rhat: &[Complex64],
    phat: &[Complex64],
) -> SpectralEval {
    assert!(eta != 0.0, "zero frequency hits the degenerate k = 0 mode");
    assert!(eta.is_finite(), "frequency must be finite");
    assert_eq!(rhat.len(), n + 1, "stretch spectrum length");
    assert_eq!(phat.len(), n + 1, "momentum spectrum length");
    let gamma = params.gamma;
    let il = Complex64::new(0.0, eta);
    let m = (n + 1) as f64;
    let mut tension_diff = Complex64::new(0.0, 0.0);
    let mut tension_sum = Complex64::new(0.0, 0.0);
    let mut stretch_diff = Complex64::new(0.0, 0.0);
    let mut momentum_diff = Complex64::new(0.0, 0.0);
    let mut stretch_sum = Complex64::new(0.0, 0.0);
    let mut momentum_sum = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        let k = j as f64 / m;
        let den = mode_denominator(il, k, gamma);
        let s = (std::f64::consts::PI * k).sin();
        let phase = Complex64::from_polar(1.0, -TAU * k);
        tension_diff += 2.0 * s * s / den;
        tension_sum += (1.0 + (TAU * k).cos()) / den;
        stretch_diff += (il + 2.0 * gamma) * rhat[j] / den;
        momentum_diff += (1.0 - phase) * phat[j] / den;
        stretch_sum += (TAU * k).sin() * rhat[j] / den;
        momentum_sum += (1.0 + phase) * phat[j] / den;
    }
    SpectralEval {
        eta,
        e_diff: e_diff_at(il, n, gamma, params.gamma_tilde),
        e_sum: e_sum_at(il, n, gamma, params.gamma_tilde),
        tension_diff: tension_diff / m,
        tension_sum: tension_sum / m,
        stretch_diff: stretch_diff / m,
        momentum_diff: momentum_diff / m,
        stretch_sum: stretch_sum / m,
        momentum_sum: momentum_sum / m,
    }
}

/// Symmetric logarithmic frequency grid: both signs of 10^e for e running
/// from `exp_min` to `exp_max` in steps of 1/per_decade. Zero is never on
/// the grid.
pub fn log_eta_grid(exp_min: f64, exp_max: f64, per_decade: usize) -> Vec<f64> {
    assert!(exp_min < exp_max && per_decade > 0);
    let steps = ((exp_max - exp_min) * per_decade as f64).round() as usize;
    let mut grid = Vec::with_capacity(2 * (steps + 1));
    for i in 0..=steps {
        let eta = 10f64.powf(exp_min + i as f64 / per_decade as f64);
        grid.push(-eta);
        grid.push(eta);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize) -> ModelParams {
        ModelParams::new(n, 0.9, 1.1, 0.8, 1.3, 0.5).unwrap()
    }

    #[test]
    #[should_panic(expected = "zero frequency")]
    fn zero_frequency_is_rejected() {
        let n = 8;
        let z = vec![Complex64::new(0.0, 0.0); n + 1];
        eval_functions(0.0, n, &params(n), &z, &z);
    }

    #[test]
    fn zero_stretch_spectrum_kills_the_stretch_sources() {
        let n = 12;
        let z = vec![Complex64::new(0.0, 0.0); n + 1];
        let c = vec![Complex64::new(0.7, 0.0); n + 1];
        for &eta in &[0.01, 1.0, 10.0, -3.0] {
            let ev = eval_functions(eta, n, &params(n), &z, &c);
            assert_eq!(ev.stretch_diff, Complex64::new(0.0, 0.0));
            assert_eq!(ev.stretch_sum, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn sum_channel_real_part_never_drops_below_one() {
        let n = 16;
        let z = vec![Complex64::new(0.0, 0.0); n + 1];
        for eta in log_eta_grid(-3.0, 3.0, 10) {
            let ev = eval_functions(eta, n, &params(n), &z, &z);
            assert!(
                ev.e_sum.re >= 1.0 - 1e-12,
                "Re e_sum = {} at eta = {eta}",
                ev.e_sum.re
            );
        }
    }

    #[test]
    fn sum_channel_matches_its_expanded_real_form() {
        // Re e_sum = 1 + 4 gamma gamma_tilde eta^2 sum cos^2 / |den|^2:
        // the rearrangement that shows the floor at 1
        let n = 10;
        let p = params(n);
        for &eta in &[0.3, -2.0, 7.5] {
            let ev = eval_functions(eta, n, &p, &[Complex64::default(); 11], &[
                Complex64::default();
                11
            ]);
            let direct = averaged_sum(n, |k| {
                let c = (std::f64::consts::PI * k).cos();
                let den = mode_denominator(Complex64::new(0.0, eta), k, p.gamma);
                Complex64::new(c * c / den.norm_sqr(), 0.0)
            });
            let expected = 1.0 + 4.0 * p.gamma * p.gamma_tilde * eta * eta * direct.re;
            assert!((ev.e_sum.re - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn tension_diff_decays_at_least_quadratically_far_out() {
        // beyond eta^2 = 8 the modulus is dominated by 2/(eta^2 - 4)
        let n = 20;
        let p = params(n);
        let z = vec![Complex64::new(0.0, 0.0); n + 1];
        for &eta in &[3.0, 5.0, 20.0, 100.0, -50.0] {
            let ev = eval_functions(eta, n, &p, &z, &z);
            assert!(
                ev.tension_diff.norm() <= 2.0 / (eta * eta - 4.0) + 1e-12,
                "|tension_diff| = {} at eta = {eta}",
                ev.tension_diff.norm()
            );
        }
    }

    #[test]
    fn frequency_grid_is_symmetric_and_avoids_zero() {
        let g = log_eta_grid(-3.0, 3.0, 5);
        assert_eq!(g.len(), 2 * 31);
        for &eta in &g {
            assert!(eta != 0.0);
            assert!(g.iter().any(|&x| (x + eta).abs() < 1e-15));
        }
        assert!((g[0] + 1e3).abs() < 1e-9);
    }
}
