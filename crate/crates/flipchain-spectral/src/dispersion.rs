//! Mode-by-mode eigenstructure of the averaged interior dynamics.
//!
//! In frequency space the mean stretch/momentum pair at lattice frequency k
//! evolves under the 2x2 block
//!
//! ```text
//!     [ 0              1 - e^{-2 pi i k} ]
//!     [ e^{2 pi i k} - 1    -2 gamma     ]
//! ```
//!
//! whose characteristic polynomial is lambda^2 + 2 gamma lambda
//! + 4 sin^2(pi k). The two roots split the dynamics into a fast flip-damped
//! branch and a slow quasi-diffusive branch.

use num_complex::Complex64;

/// Eigenvalue pair of the frequency-k block of the averaged dynamics.
#[derive(Debug, Clone, Copy)]
pub struct DispersionPoint {
    pub k: f64,
    /// Fast branch, -(gamma + sqrt(gamma^2 - 4 sin^2(pi k))).
    pub lambda_plus: Complex64,
    /// Slow branch, -(gamma - sqrt(gamma^2 - 4 sin^2(pi k))).
    pub lambda_minus: Complex64,
}

/// Characteristic polynomial of the frequency-k mode block.
pub fn char_poly(lambda: Complex64, k: f64, gamma: f64) -> Complex64 {
    let s = (std::f64::consts::PI * k).sin();
    lambda * lambda + 2.0 * gamma * lambda + Complex64::new(4.0 * s * s, 0.0)
}

/// Both roots of the mode block at frequency `k`, principal square root.
/// Real parts are never positive: the averaged flow is dissipative.
pub fn dispersion(k: f64, gamma: f64) -> DispersionPoint {
    assert!((0.0..1.0).contains(&k), "frequency {k} outside [0,1)");
    assert!(gamma > 0.0, "flip rate must be positive");
    let s = (std::f64::consts::PI * k).sin();
    let disc = Complex64::new(gamma * gamma - 4.0 * s * s, 0.0).sqrt();
    DispersionPoint {
        k,
        lambda_plus: -(Complex64::new(gamma, 0.0) + disc),
        lambda_minus: -(Complex64::new(gamma, 0.0) - disc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_frequency_splits_into_zero_and_full_damping() {
        for &g in &[0.5, 1.0, 2.0] {
            let d = dispersion(0.0, g);
            assert!(d.lambda_minus.norm() < 1e-15);
            assert!((d.lambda_plus - Complex64::new(-2.0 * g, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn quarter_frequency_at_unit_rate_is_the_rotated_pair() {
        let d = dispersion(0.25, 1.0);
        assert!((d.lambda_plus - Complex64::new(-1.0, -1.0)).norm() < 1e-14);
        assert!((d.lambda_minus - Complex64::new(-1.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn roots_satisfy_the_characteristic_polynomial_on_full_lattices() {
        for &n in &[16usize, 64, 256] {
            let m = n + 1;
            for &g in &[0.5, 1.0, 2.0] {
                for j in 0..m {
                    let k = j as f64 / m as f64;
                    let d = dispersion(k, g);
                    assert!(char_poly(d.lambda_plus, k, g).norm() < 1e-12);
                    assert!(char_poly(d.lambda_minus, k, g).norm() < 1e-12);
                    assert!(d.lambda_plus.re <= 1e-15);
                    assert!(d.lambda_minus.re <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn overdamped_roots_sit_in_their_stated_windows() {
        // where the discriminant is positive both roots are real, the fast
        // one between -2g and -g, the slow one squeezed by 4s^2/g and 2s^2/g
        for &g in &[1.0, 2.0, 3.5] {
            for j in 1..200 {
                let k = j as f64 / 800.0;
                let s2 = (std::f64::consts::PI * k).sin().powi(2);
                if g * g <= 4.0 * s2 {
                    continue;
                }
                let d = dispersion(k, g);
                assert!(d.lambda_plus.im.abs() < 1e-15);
                assert!(d.lambda_minus.im.abs() < 1e-15);
                let (lp, lm) = (d.lambda_plus.re, d.lambda_minus.re);
                assert!(-2.0 * g <= lp + 1e-12 && lp <= -g + 1e-12, "fast root {lp}");
                assert!(
                    -4.0 * s2 / g <= lm + 1e-12 && lm <= -2.0 * s2 / g + 1e-12,
                    "slow root {lm} at k = {k}, gamma = {g}"
                );
            }
        }
    }
}
