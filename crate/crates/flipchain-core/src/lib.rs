//! Shared domain types for an open harmonic chain with random momentum-sign
//! flips, Ornstein-Uhlenbeck thermostats at both ends, and a constant tension
//! pulling on the right edge.
//!
//! Conventions used across the workspace:
//!
//! * sites x = 0..n; stretches r_1..r_n with r_0 = 0 held structurally;
//!   momenta p_0..p_n; phase vector z = (r_1..r_n, p_0..p_n) of length 2n+1;
//! * the generator is n^2 (A + gamma*S + gamma_tilde*St), where A is the
//!   Hamiltonian drift including the tension force on p_n, S flips single
//!   momentum signs, and St is the boundary Langevin part with temperatures
//!   T- at x = 0 and T+ at x = n;
//! * energy density E_x = p_x^2/2 + r_x^2/2, currents j_{x,x+1} = -p_x r_{x+1};
//! * discrete Fourier transform is the unnormalized forward sum over sites
//!   with the averaged inverse, so Parseval reads (1/(n+1)) sum_k fhat ghat* =
//!   sum_x f g*.

pub mod fourier;
pub mod gibbs;
pub mod observable;
pub mod params;
pub mod state;

pub use fourier::{dft_forward, dft_forward_real, dft_inverse, freq_grid};
pub use gibbs::{gibbs_potential, sample_initial, GibbsSpec};
pub use observable::{
    current_at, energy_at, fd_residual_g, fd_residual_h, g_x, generator_apply, h_x, momentum_at,
    v_x, w_x, QuadraticObservable,
};
pub use params::ModelParams;
pub use state::{current, energy_density, ChainState};

/// Length of the phase vector (r_1..r_n, p_0..p_n).
pub fn phase_dim(n: usize) -> usize {
    2 * n + 1
}

/// Index of r_x in the phase vector, 1 <= x <= n.
pub fn idx_r(n: usize, x: usize) -> usize {
    debug_assert!(x >= 1 && x <= n, "r index {x} outside 1..={n}");
    x - 1
}

/// Index of p_x in the phase vector, 0 <= x <= n.
pub fn idx_p(n: usize, x: usize) -> usize {
    debug_assert!(x <= n, "p index {x} outside 0..={n}");
    n + x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_indexing_is_a_bijection() {
        let n = 5;
        let mut seen = vec![false; phase_dim(n)];
        for x in 1..=n {
            seen[idx_r(n, x)] = true;
        }
        for x in 0..=n {
            seen[idx_p(n, x)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
