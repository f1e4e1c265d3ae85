//! Uniform macroscopic grid on [0, 1].

/// Grid of `m` cells with nodes u_j = j/m, j = 0..=m, plus the time step the
/// solvers advance with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub m: usize,
    pub dt: f64,
}

impl Grid1D {
    pub fn new(m: usize, dt: f64) -> Self {
        assert!(m >= 8, "grid needs at least 8 cells, got {m}");
        assert!(
            dt > 0.0 && dt.is_finite(),
            "time step must be positive and finite, got {dt}"
        );
        Grid1D { m, dt }
    }

    pub fn du(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.m).map(|j| j as f64 / self.m as f64).collect()
    }

    /// Whether `dt <= gamma du^2`, the step bound under which the
    /// half-implicit stretch update is monotone and the discrete solution
    /// cannot leave the hull of its initial and boundary values. Larger
    /// steps remain stable but may overshoot; the solvers log a note when
    /// this bound is exceeded.
    pub fn preserves_hull(&self, gamma: f64) -> bool {
        self.dt <= gamma * self.du() * self.du() * (1.0 + 1e-12)
    }
}
