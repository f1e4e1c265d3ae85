//! Integrator configuration.

/// Step size, horizon, and recording cadence for a trajectory run.
///
/// `dtau` is the microscopic step; one micro-step advances macroscopic time
/// by dtau/n^2. The cap dtau <= 0.25 keeps a comfortable margin against the
/// maximal harmonic frequency 2 of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dtau: f64,
    pub t_end_macro: f64,
    pub record_stride: usize,
    /// Accumulate full second-moment matrices at recorded times. Off by
    /// default for large chains: the blocks are (2n+1)^2 per time slot.
    pub collect_cov: bool,
}

impl IntegratorConfig {
    pub fn new(dtau: f64, t_end_macro: f64, record_stride: usize) -> Result<Self, String> {
        if !(dtau > 0.0) {
            return Err(format!("dtau must be positive, got {dtau}"));
        }
        if dtau > 0.25 {
            return Err(format!("dtau {dtau} exceeds the stability cap 0.25"));
        }
        if !(t_end_macro >= 0.0) {
            return Err(format!("t_end_macro must be nonnegative, got {t_end_macro}"));
        }
        if record_stride == 0 {
            return Err("record_stride must be at least 1".into());
        }
        Ok(IntegratorConfig {
            dtau,
            t_end_macro,
            record_stride,
            collect_cov: false,
        })
    }

    pub fn with_cov(mut self) -> Self {
        self.collect_cov = true;
        self
    }

    /// Number of micro-steps needed to reach the horizon on a chain of n
    /// sites; the effective horizon is num_steps * dtau / n^2.
    pub fn num_steps(&self, n: usize) -> usize {
        (self.t_end_macro * (n * n) as f64 / self.dtau).round() as usize
    }
}
