//! Quadratic observables and the action of the chain generator on them.
//!
//! Everything the verification layer needs to check is a polynomial of degree
//! at most two in the phase vector z = (r_1..r_n, p_0..p_n), so observables
//! are stored as sparse monomial lists. Degree > 2 cannot be expressed.

use crate::params::ModelParams;
use crate::state::ChainState;
use crate::{idx_p, idx_r, phase_dim};

/// c0 + sum_i lin_i z_i + sum_{i<=j} quad_{ij} z_i z_j.
#[derive(Debug, Clone)]
pub struct QuadraticObservable {
    dim: usize,
    c0: f64,
    lin: Vec<(usize, f64)>,
    quad: Vec<(usize, usize, f64)>,
}

impl QuadraticObservable {
    pub fn new(dim: usize) -> Self {
        QuadraticObservable {
            dim,
            c0: 0.0,
            lin: Vec::new(),
            quad: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_const(&mut self, c: f64) -> &mut Self {
        self.c0 += c;
        self
    }

    pub fn add_lin(&mut self, i: usize, c: f64) -> &mut Self {
        assert!(i < self.dim, "index {i} out of range for dim {}", self.dim);
        self.lin.push((i, c));
        self
    }

    pub fn add_quad(&mut self, i: usize, j: usize, c: f64) -> &mut Self {
        assert!(
            i < self.dim && j < self.dim,
            "index ({i},{j}) out of range for dim {}",
            self.dim
        );
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.quad.push((a, b, c));
        self
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        assert_eq!(z.len(), self.dim);
        let mut v = self.c0;
        for &(i, c) in &self.lin {
            v += c * z[i];
        }
        for &(i, j, c) in &self.quad {
            v += c * z[i] * z[j];
        }
        v
    }

    /// dF/dz_i at z.
    pub fn partial(&self, i: usize, z: &[f64]) -> f64 {
        let mut d = 0.0;
        for &(a, c) in &self.lin {
            if a == i {
                d += c;
            }
        }
        for &(a, b, c) in &self.quad {
            if a == i && b == i {
                d += 2.0 * c * z[i];
            } else if a == i {
                d += c * z[b];
            } else if b == i {
                d += c * z[a];
            }
        }
        d
    }

    /// d^2F/dz_i^2 (constant for quadratics).
    pub fn second_partial(&self, i: usize) -> f64 {
        self.quad
            .iter()
            .filter(|&&(a, b, _)| a == i && b == i)
            .map(|&(_, _, c)| 2.0 * c)
            .sum()
    }

    pub fn gradient(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.dim);
        let mut g = vec![0.0; self.dim];
        for &(i, c) in &self.lin {
            g[i] += c;
        }
        for &(i, j, c) in &self.quad {
            if i == j {
                g[i] += 2.0 * c * z[i];
            } else {
                g[i] += c * z[j];
                g[j] += c * z[i];
            }
        }
        g
    }

    /// F(z with z_i negated) - F(z). Only the monomials odd in z_i survive.
    pub fn flip_delta(&self, i: usize, z: &[f64]) -> f64 {
        let mut d = 0.0;
        for &(a, c) in &self.lin {
            if a == i {
                d -= 2.0 * c * z[a];
            }
        }
        for &(a, b, c) in &self.quad {
            if (a == i) ^ (b == i) {
                d -= 2.0 * c * z[a] * z[b];
            }
        }
        d
    }
}

/// L F evaluated at `state`, with L = n^2 (A + gamma S + gamma_tilde St).
///
/// A is the boundary-aware Hamiltonian drift, S the momentum sign-flip jump
/// part (one unit rate per site, no 1/2), St the Langevin generator acting on
/// p_0 and p_n with temperatures t_minus and t_plus.
pub fn generator_apply(
    params: &ModelParams,
    obs: &QuadraticObservable,
    state: &ChainState,
) -> f64 {
    let n = params.n;
    assert_eq!(obs.dim(), phase_dim(n), "observable dimension mismatch");
    assert_eq!(state.n(), n, "state size mismatch");
    let z = state.phase_vector();

    let grad = obs.gradient(&z);
    let mut a = 0.0;
    for x in 1..=n {
        a += grad[idx_r(n, x)] * (z[idx_p(n, x)] - z[idx_p(n, x - 1)]);
    }
    a += grad[idx_p(n, 0)] * z[idx_r(n, 1)];
    for x in 1..n {
        a += grad[idx_p(n, x)] * (z[idx_r(n, x + 1)] - z[idx_r(n, x)]);
    }
    a += grad[idx_p(n, n)] * (params.tau_plus - z[idx_r(n, n)]);

    let mut s = 0.0;
    for x in 0..=n {
        s += obs.flip_delta(idx_p(n, x), &z);
    }

    let mut st = 0.0;
    for &x in &[0usize, n] {
        let i = idx_p(n, x);
        st += params.boundary_temp(x) * obs.second_partial(i) - z[i] * obs.partial(i, &z);
    }

    (n * n) as f64 * (a + params.gamma * s + params.gamma_tilde * st)
}

/// E_x = p_x^2/2 + r_x^2/2 as an observable (no stretch term at x = 0).
pub fn energy_at(n: usize, x: usize) -> QuadraticObservable {
    assert!(x <= n, "site {x} outside 0..={n}");
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_quad(idx_p(n, x), idx_p(n, x), 0.5);
    if x >= 1 {
        obs.add_quad(idx_r(n, x), idx_r(n, x), 0.5);
    }
    obs
}

/// j_{x,x+1} = -p_x r_{x+1} as an observable, 0 <= x <= n-1.
pub fn current_at(n: usize, x: usize) -> QuadraticObservable {
    assert!(x < n, "bond {x} outside 0..={}", n - 1);
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_quad(idx_p(n, x), idx_r(n, x + 1), -1.0);
    obs
}

pub fn momentum_at(n: usize, x: usize) -> QuadraticObservable {
    assert!(x <= n, "site {x} outside 0..={n}");
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_lin(idx_p(n, x), 1.0);
    obs
}

/// Current counter-term g_x = -p_x^2/4 + p_x (r_x + r_{x+1}) / (4 gamma),
/// defined for 1 <= x <= n-1.
pub fn g_x(params: &ModelParams, x: usize) -> QuadraticObservable {
    let n = params.n;
    assert!((1..n).contains(&x), "g_x needs 1 <= x <= n-1, got {x}");
    let c = 1.0 / (4.0 * params.gamma);
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_quad(idx_p(n, x), idx_p(n, x), -0.25);
    obs.add_quad(idx_p(n, x), idx_r(n, x), c);
    obs.add_quad(idx_p(n, x), idx_r(n, x + 1), c);
    obs
}

/// Gradient potential V_x = (r_x^2 + p_x p_{x-1}) / (4 gamma), 1 <= x <= n.
pub fn v_x(params: &ModelParams, x: usize) -> QuadraticObservable {
    let n = params.n;
    assert!((1..=n).contains(&x), "v_x needs 1 <= x <= n, got {x}");
    let c = 1.0 / (4.0 * params.gamma);
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_quad(idx_r(n, x), idx_r(n, x), c);
    obs.add_quad(idx_p(n, x - 1), idx_p(n, x), c);
    obs
}

/// Momentum-pair counter-term
/// h_x = ((r_x + r_{x-1})^2 / 2 + p_{x-1} p_x - r_x^2) / (2 gamma),
/// defined for 2 <= x <= n.
pub fn h_x(params: &ModelParams, x: usize) -> QuadraticObservable {
    let n = params.n;
    assert!((2..=n).contains(&x), "h_x needs 2 <= x <= n, got {x}");
    let c = 1.0 / (2.0 * params.gamma);
    let mut obs = QuadraticObservable::new(phase_dim(n));
    // (r_x + r_{x-1})^2/2 - r_x^2 = -r_x^2/2 + r_x r_{x-1} + r_{x-1}^2/2
    obs.add_quad(idx_r(n, x), idx_r(n, x), -0.5 * c);
    obs.add_quad(idx_r(n, x - 1), idx_r(n, x), c);
    obs.add_quad(idx_r(n, x - 1), idx_r(n, x - 1), 0.5 * c);
    obs.add_quad(idx_p(n, x - 1), idx_p(n, x), c);
    obs
}

/// Momentum-pair potential W_x = p_{x-2} (r_{x-1} + r_x) / (2 gamma),
/// defined for 2 <= x <= n.
pub fn w_x(params: &ModelParams, x: usize) -> QuadraticObservable {
    let n = params.n;
    assert!((2..=n).contains(&x), "w_x needs 2 <= x <= n, got {x}");
    let c = 1.0 / (2.0 * params.gamma);
    let mut obs = QuadraticObservable::new(phase_dim(n));
    obs.add_quad(idx_p(n, x - 2), idx_r(n, x - 1), c);
    obs.add_quad(idx_p(n, x - 2), idx_r(n, x), c);
    obs
}

/// Fluctuation-dissipation defect for the current:
/// n^{-2} L g_x - (V_{x+1} - V_x) - j_{x,x+1}, which vanishes identically
/// for 1 <= x <= n-1.
pub fn fd_residual_g(params: &ModelParams, state: &ChainState, x: usize) -> f64 {
    let n = params.n;
    assert!((1..n).contains(&x), "fd_residual_g needs 1 <= x <= n-1, got {x}");
    let z = state.phase_vector();
    let inv_n2 = 1.0 / ((n * n) as f64);
    let lg = inv_n2 * generator_apply(params, &g_x(params, x), state);
    let dv = v_x(params, x + 1).eval(&z) - v_x(params, x).eval(&z);
    let j = -state.p[x] * state.stretch(x + 1);
    lg - dv - j
}

/// Fluctuation-dissipation defect for the momentum pair:
/// n^{-2} L h_x - (W_{x+1} - W_x) + 2 p_x p_{x-1}, which vanishes identically
/// for 2 <= x <= n-2. The flip part acts on p_{x-1} p_x at both sites, hence
/// the factor 2.
pub fn fd_residual_h(params: &ModelParams, state: &ChainState, x: usize) -> f64 {
    let n = params.n;
    assert!(
        (2..=n - 2).contains(&x),
        "fd_residual_h needs 2 <= x <= n-2, got {x}"
    );
    let z = state.phase_vector();
    let inv_n2 = 1.0 / ((n * n) as f64);
    let lh = inv_n2 * generator_apply(params, &h_x(params, x), state);
    let dw = w_x(params, x + 1).eval(&z) - w_x(params, x).eval(&z);
    lh - dw + 2.0 * state.p[x] * state.p[x - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng, n: usize) -> ChainState {
        ChainState::new(
            (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            (0..=n).map(|_| rng.gen_range(-3.0..3.0)).collect(),
        )
    }

    fn test_params(n: usize) -> ModelParams {
        ModelParams::new(n, 0.8, 1.3, 0.7, 1.9, 0.6).unwrap()
    }

    #[test]
    fn eval_and_gradient_agree_with_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dim = 9;
        let mut obs = QuadraticObservable::new(dim);
        obs.add_const(0.3);
        for _ in 0..6 {
            obs.add_lin(rng.gen_range(0..dim), rng.gen_range(-1.0..1.0));
            obs.add_quad(
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
                rng.gen_range(-1.0..1.0),
            );
        }
        let z: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let g = obs.gradient(&z);
        let h = 1e-6;
        for i in 0..dim {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[i] += h;
            zm[i] -= h;
            let fd = (obs.eval(&zp) - obs.eval(&zm)) / (2.0 * h);
            assert_abs_diff_eq!(g[i], fd, epsilon = 1e-8);
            assert_abs_diff_eq!(g[i], obs.partial(i, &z), epsilon = 1e-14);
            let fd2 = (obs.eval(&zp) - 2.0 * obs.eval(&z) + obs.eval(&zm)) / (h * h);
            assert_abs_diff_eq!(obs.second_partial(i), fd2, epsilon = 1e-3);
        }
    }

    #[test]
    fn flip_delta_matches_explicit_sign_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let dim = 7;
        let mut obs = QuadraticObservable::new(dim);
        for _ in 0..8 {
            obs.add_lin(rng.gen_range(0..dim), rng.gen_range(-1.0..1.0));
            obs.add_quad(
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
                rng.gen_range(-1.0..1.0),
            );
        }
        let z: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for i in 0..dim {
            let mut zf = z.clone();
            zf[i] = -zf[i];
            assert_abs_diff_eq!(
                obs.flip_delta(i, &z),
                obs.eval(&zf) - obs.eval(&z),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn flip_part_on_momentum_pair() {
        // Summing flip deltas over all sites applied to p_x p_y (x != y)
        // must give -4 p_x p_y: the product is odd under either flip.
        let n = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let state = random_state(&mut rng, n);
        let z = state.phase_vector();
        let (x, y) = (3usize, 7usize);
        let mut obs = QuadraticObservable::new(phase_dim(n));
        obs.add_quad(idx_p(n, x), idx_p(n, y), 1.0);
        let s: f64 = (0..=n).map(|w| obs.flip_delta(idx_p(n, w), &z)).sum();
        assert_abs_diff_eq!(s, -4.0 * state.p[x] * state.p[y], epsilon = 1e-13);
    }

    #[test]
    fn generator_on_bulk_momentum() {
        // n^{-2} L p_x = (r_{x+1} - r_x) - 2 gamma p_x for 1 <= x <= n-1.
        let n = 12;
        let params = test_params(n);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let state = random_state(&mut rng, n);
            for x in 1..n {
                let lhs =
                    generator_apply(&params, &momentum_at(n, x), &state) / ((n * n) as f64);
                let rhs = (state.stretch(x + 1) - state.stretch(x))
                    - 2.0 * params.gamma * state.p[x];
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn generator_on_boundary_momenta() {
        // n^{-2} L p_0 = r_1 - (2 gamma + gamma_tilde) p_0,
        // n^{-2} L p_n = tau_plus - r_n - (2 gamma + gamma_tilde) p_n.
        let n = 9;
        let params = test_params(n);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let inv_n2 = 1.0 / ((n * n) as f64);
        for _ in 0..20 {
            let state = random_state(&mut rng, n);
            let damp = 2.0 * params.gamma + params.gamma_tilde;
            let l0 = inv_n2 * generator_apply(&params, &momentum_at(n, 0), &state);
            assert_abs_diff_eq!(l0, state.stretch(1) - damp * state.p[0], epsilon = 1e-12);
            let ln = inv_n2 * generator_apply(&params, &momentum_at(n, n), &state);
            assert_abs_diff_eq!(
                ln,
                params.tau_plus - state.stretch(n) - damp * state.p[n],
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn generator_on_energy_density() {
        // Interior: n^{-2} L E_x = j_{x-1,x} - j_{x,x+1}.
        // Left end: n^{-2} L E_0 = -j_{0,1} + gamma_tilde (T_- - p_0^2).
        // Right end: n^{-2} L E_n = j_{n-1,n} + tau_plus p_n
        //            + gamma_tilde (T_+ - p_n^2).
        let n = 11;
        let params = test_params(n);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let inv_n2 = 1.0 / ((n * n) as f64);
        let j = |s: &ChainState, x: usize| -s.p[x] * s.stretch(x + 1);
        for _ in 0..20 {
            let state = random_state(&mut rng, n);
            for x in 1..n {
                let lhs = inv_n2 * generator_apply(&params, &energy_at(n, x), &state);
                assert_abs_diff_eq!(lhs, j(&state, x - 1) - j(&state, x), epsilon = 1e-12);
            }
            let l0 = inv_n2 * generator_apply(&params, &energy_at(n, 0), &state);
            let p0 = state.p[0];
            assert_abs_diff_eq!(
                l0,
                -j(&state, 0) + params.gamma_tilde * (params.t_minus - p0 * p0),
                epsilon = 1e-12
            );
            let ln = inv_n2 * generator_apply(&params, &energy_at(n, n), &state);
            let pn = state.p[n];
            assert_abs_diff_eq!(
                ln,
                j(&state, n - 1)
                    + params.tau_plus * pn
                    + params.gamma_tilde * (params.t_plus - pn * pn),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn fd_residuals_vanish_on_random_states() {
        let n = 16;
        let params = test_params(n);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let state = random_state(&mut rng, n);
            for x in 1..n {
                assert_abs_diff_eq!(fd_residual_g(&params, &state, x), 0.0, epsilon = 1e-11);
            }
            for x in 2..=n - 2 {
                assert_abs_diff_eq!(fd_residual_h(&params, &state, x), 0.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn current_observable_matches_direct_value() {
        let n = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let state = random_state(&mut rng, n);
        let z = state.phase_vector();
        for x in 0..n {
            assert_abs_diff_eq!(
                current_at(n, x).eval(&z),
                crate::state::current(&state, x),
                epsilon = 1e-14
            );
        }
    }
}
