//! One microscopic configuration of the chain.

use crate::{idx_p, idx_r, phase_dim};

/// Configuration (r, p) plus the macroscopic clock.
///
/// `r[x-1]` stores the stretch r_x for 1 <= x <= n; r_0 = 0 is a structural
/// convention and is never stored. `p[x]` stores the momentum p_x for
/// 0 <= x <= n. Time is kept on the macroscopic scale (one unit equals n^2
/// microscopic time units).
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub r: Vec<f64>,
    pub p: Vec<f64>,
    pub t_macro: f64,
}

impl ChainState {
    pub fn zero(n: usize) -> Self {
        ChainState {
            r: vec![0.0; n],
            p: vec![0.0; n + 1],
            t_macro: 0.0,
        }
    }

    pub fn new(r: Vec<f64>, p: Vec<f64>) -> Self {
        assert_eq!(
            r.len() + 1,
            p.len(),
            "stretch vector must be one shorter than the momentum vector"
        );
        ChainState { r, p, t_macro: 0.0 }
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    /// r_x with the r_0 = 0 convention.
    pub fn stretch(&self, x: usize) -> f64 {
        if x == 0 {
            0.0
        } else {
            self.r[x - 1]
        }
    }

    pub fn momentum(&self, x: usize) -> f64 {
        self.p[x]
    }

    pub fn is_finite(&self) -> bool {
        self.r.iter().chain(self.p.iter()).all(|v| v.is_finite())
    }

    /// Phase vector z = (r_1..r_n, p_0..p_n).
    pub fn phase_vector(&self) -> Vec<f64> {
        let n = self.n();
        let mut z = vec![0.0; phase_dim(n)];
        for x in 1..=n {
            z[idx_r(n, x)] = self.r[x - 1];
        }
        for x in 0..=n {
            z[idx_p(n, x)] = self.p[x];
        }
        z
    }

    /// Squared phase-space norm |r|^2 + |p|^2.
    pub fn norm2(&self) -> f64 {
        self.r.iter().map(|v| v * v).sum::<f64>() + self.p.iter().map(|v| v * v).sum::<f64>()
    }
}

/// Energy density E_x = p_x^2/2 + r_x^2/2 for x = 0..n (r_0 = 0).
pub fn energy_density(state: &ChainState) -> Vec<f64> {
    let n = state.n();
    (0..=n)
        .map(|x| {
            let r = state.stretch(x);
            let p = state.p[x];
            0.5 * (p * p + r * r)
        })
        .collect()
}

/// Microscopic current j_{x,x+1} = -p_x r_{x+1} for 0 <= x <= n-1.
pub fn current(state: &ChainState, x: usize) -> f64 {
    let n = state.n();
    assert!(x < n, "current index {x} outside 0..={}", n - 1);
    -state.p[x] * state.r[x]
}
