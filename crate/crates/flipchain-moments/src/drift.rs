//! Drift assembly and the flip action on second moments.

use flipchain_core::{idx_p, idx_r, phase_dim, ModelParams};

/// Linear drift of the mean dynamics in microscopic time, split as the spec
/// of the moment ODEs requires:
///
/// * `a0` — Hamiltonian couplings plus the boundary friction -gamma_tilde on
///   the p_0 and p_n diagonals, sparse rows of (column, coefficient);
/// * `df_diag` — flip damping, -2 gamma on every momentum coordinate;
/// * `b` — constant forcing, tau_plus at p_n;
/// * `q_diag` — thermostat diffusion, 2 gamma_tilde T at the boundary
///   momentum diagonals.
#[derive(Debug, Clone)]
pub struct DriftSpec {
    pub n: usize,
    pub a0: Vec<Vec<(usize, f64)>>,
    pub df_diag: Vec<f64>,
    pub b: Vec<f64>,
    pub q_diag: Vec<f64>,
}

impl DriftSpec {
    pub fn dim(&self) -> usize {
        phase_dim(self.n)
    }

    /// y = A0 x.
    pub fn apply_a0(&self, x: &[f64], y: &mut [f64]) {
        for (row, out) in self.a0.iter().zip(y.iter_mut()) {
            *out = row.iter().map(|&(j, c)| c * x[j]).sum();
        }
    }

    /// y = (A0 + Df) x + b.
    pub fn apply_mean_drift(&self, x: &[f64], y: &mut [f64]) {
        self.apply_a0(x, y);
        for i in 0..x.len() {
            y[i] += self.df_diag[i] * x[i] + self.b[i];
        }
    }

    /// Dense (A0 + Df) matrix, row-major.
    pub fn full_mean_matrix(&self) -> Vec<f64> {
        let d = self.dim();
        let mut a = vec![0.0; d * d];
        for (i, row) in self.a0.iter().enumerate() {
            for &(j, c) in row {
                a[i * d + j] += c;
            }
            a[i * d + i] += self.df_diag[i];
        }
        a
    }
}

pub fn build_drift(params: &ModelParams) -> DriftSpec {
    let n = params.n;
    let d = phase_dim(n);
    let mut a0 = vec![Vec::new(); d];
    let mut df_diag = vec![0.0; d];
    let mut b = vec![0.0; d];
    let mut q_diag = vec![0.0; d];

    // dr_x = p_x - p_{x-1}
    for x in 1..=n {
        a0[idx_r(n, x)] = vec![(idx_p(n, x), 1.0), (idx_p(n, x - 1), -1.0)];
    }
    // dp_0 = r_1 - gamma_tilde p_0 (flip damping lives in Df)
    a0[idx_p(n, 0)] = vec![(idx_r(n, 1), 1.0), (idx_p(n, 0), -params.gamma_tilde)];
    // bulk dp_x = r_{x+1} - r_x
    for x in 1..n {
        a0[idx_p(n, x)] = vec![(idx_r(n, x + 1), 1.0), (idx_r(n, x), -1.0)];
    }
    // dp_n = tau_plus - r_n - gamma_tilde p_n
    a0[idx_p(n, n)] = vec![(idx_r(n, n), -1.0), (idx_p(n, n), -params.gamma_tilde)];
    b[idx_p(n, n)] = params.tau_plus;

    for x in 0..=n {
        df_diag[idx_p(n, x)] = -2.0 * params.gamma;
    }
    q_diag[idx_p(n, 0)] = 2.0 * params.gamma_tilde * params.t_minus;
    q_diag[idx_p(n, n)] = 2.0 * params.gamma_tilde * params.t_plus;

    DriftSpec {
        n,
        a0,
        df_diag,
        b,
        q_diag,
    }
}

/// Entrywise decay rate the sign flips impose on a second-moment entry.
/// Coordinates 0..n-1 are stretches, n..2n are momenta.
pub(crate) fn flip_rate(i: usize, j: usize, n: usize, gamma: f64) -> f64 {
    let pi = i >= n;
    let pj = j >= n;
    if pi && pj {
        if i == j {
            0.0
        } else {
            -4.0 * gamma
        }
    } else if pi || pj {
        -2.0 * gamma
    } else {
        0.0
    }
}

/// Flip action on second moments: gamma * sum_x (J_x M J_x^T - M) where J_x
/// negates coordinate p_x. Entrywise that is -4 gamma on distinct momentum
/// pairs, -2 gamma on mixed momentum-stretch entries, zero on the momentum
/// diagonal and on the stretch block. Panics on an asymmetric input.
pub fn flip_term(m: &[f64], n: usize, gamma: f64) -> Vec<f64> {
    let d = phase_dim(n);
    assert_eq!(m.len(), d * d, "matrix shape mismatch");
    let scale = m.iter().fold(0.0f64, |a, &v| a.max(v.abs())).max(1.0);
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            let asym = (m[i * d + j] - m[j * d + i]).abs();
            assert!(
                asym <= 1e-12 * scale,
                "asymmetric input to flip_term at ({i},{j}): {asym:e}"
            );
            out[i * d + j] = flip_rate(i, j, n, gamma) * m[i * d + j];
        }
    }
    out
}
