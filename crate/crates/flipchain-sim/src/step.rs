//! The Strang-split micro-step and its three sub-steps.
//!
//! Sub-steps take raw rate/temperature arguments rather than ModelParams so
//! degenerate settings (no flips, no thermostats) stay reachable in tests.

use crate::config::IntegratorConfig;
use flipchain_core::{ChainState, ModelParams};
use rand::Rng;
use rand_distr::StandardNormal;

/// Probability that a momentum flips an odd number of times during dtau under
/// a Poisson clock of rate gamma: (1 - exp(-2 gamma dtau)) / 2.
pub fn flip_probability(gamma: f64, dtau: f64) -> f64 {
    assert!(gamma > 0.0 && dtau > 0.0, "flip_probability needs positive arguments");
    // exp_m1 keeps accuracy when gamma * dtau is tiny
    -0.5 * (-(2.0 * gamma * dtau)).exp_m1()
}

/// Exact Ornstein-Uhlenbeck update of the two boundary momenta over dtau/2:
/// p <- exp(-gt dtau/2) p + sqrt(T (1 - exp(-gt dtau))) xi. Stretches are
/// untouched.
pub fn ou_half_step<R: Rng + ?Sized>(
    state: &mut ChainState,
    gamma_tilde: f64,
    t_minus: f64,
    t_plus: f64,
    dtau: f64,
    rng: &mut R,
) {
    let n = state.n();
    let decay = (-gamma_tilde * dtau / 2.0).exp();
    let resid = -(-gamma_tilde * dtau).exp_m1(); // 1 - exp(-gt dtau), accurate for small dtau
    let sd_minus = (t_minus * resid).sqrt();
    let sd_plus = (t_plus * resid).sqrt();
    let xi0: f64 = rng.sample(StandardNormal);
    let xin: f64 = rng.sample(StandardNormal);
    state.p[0] = decay * state.p[0] + sd_minus * xi0;
    state.p[n] = decay * state.p[n] + sd_plus * xin;
}

/// One velocity-Verlet step of the Hamiltonian flow with the boundary forces
/// r_1 on p_0 and (tau_plus - r_n) on p_n.
pub fn verlet_step(state: &mut ChainState, tau_plus: f64, dtau: f64) {
    let n = state.n();
    let half = 0.5 * dtau;
    kick(state, tau_plus, half);
    // drift: r_x += dtau (p_x - p_{x-1})
    for x in 1..=n {
        state.r[x - 1] += dtau * (state.p[x] - state.p[x - 1]);
    }
    kick(state, tau_plus, half);
}

fn kick(state: &mut ChainState, tau_plus: f64, h: f64) {
    let n = state.n();
    state.p[0] += h * state.r[0];
    for x in 1..n {
        state.p[x] += h * (state.r[x] - state.r[x - 1]);
    }
    state.p[n] += h * (tau_plus - state.r[n - 1]);
}

/// Independent sign flips: each momentum negated with probability `prob`.
pub fn flip_step<R: Rng + ?Sized>(state: &mut ChainState, prob: f64, rng: &mut R) {
    debug_assert!((0.0..0.5).contains(&prob));
    for p in state.p.iter_mut() {
        if rng.gen_bool(prob) {
            *p = -*p;
        }
    }
}

/// One full micro-step: OU half, Verlet, flips, OU half; advances t_macro by
/// dtau/n^2. Both stochastic sub-steps are exact in law, so the only
/// splitting error is the weak O(dtau^2) of the Hamiltonian part.
pub fn step<R: Rng + ?Sized>(
    state: &mut ChainState,
    cfg: &IntegratorConfig,
    params: &ModelParams,
    rng: &mut R,
) -> Result<(), String> {
    let dtau = cfg.dtau;
    ou_half_step(state, params.gamma_tilde, params.t_minus, params.t_plus, dtau, rng);
    verlet_step(state, params.tau_plus, dtau);
    flip_step(state, flip_probability(params.gamma, dtau), rng);
    ou_half_step(state, params.gamma_tilde, params.t_minus, params.t_plus, dtau, rng);
    state.t_macro += dtau / (params.n * params.n) as f64;
    if !state.is_finite() {
        return Err(format!(
            "non-finite state at t_macro = {} (n = {})",
            state.t_macro, params.n
        ));
    }
    Ok(())
}
