//! Physical and scaling constants of the chain.

/// Model constants: chain size and the four rate/temperature parameters.
///
/// `n` is the largest site index, so the chain has n+1 momenta and n
/// stretches. `gamma` is the momentum-flip intensity, `gamma_tilde` the
/// strength of the boundary Langevin thermostats, `t_minus`/`t_plus` their
/// temperatures, and `tau_plus` the constant tension applied to p_n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub gamma: f64,
    pub gamma_tilde: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    pub tau_plus: f64,
}

impl ModelParams {
    pub fn new(
        n: usize,
        gamma: f64,
        gamma_tilde: f64,
        t_minus: f64,
        t_plus: f64,
        tau_plus: f64,
    ) -> Result<Self, String> {
        if n < 2 {
            return Err(format!("chain needs n >= 2, got {n}"));
        }
        if !(gamma > 0.0) {
            return Err(format!("flip intensity must be positive, got {gamma}"));
        }
        if !(gamma_tilde > 0.0) {
            return Err(format!(
                "thermostat intensity must be positive, got {gamma_tilde}"
            ));
        }
        if !(t_minus > 0.0) || !(t_plus > 0.0) {
            return Err(format!(
                "temperatures must be positive, got T- = {t_minus}, T+ = {t_plus}"
            ));
        }
        if !tau_plus.is_finite() {
            return Err(format!("tension must be finite, got {tau_plus}"));
        }
        Ok(ModelParams {
            n,
            gamma,
            gamma_tilde,
            t_minus,
            t_plus,
            tau_plus,
        })
    }

    /// Thermostat temperature at a boundary site (0 or n).
    pub fn boundary_temp(&self, x: usize) -> f64 {
        if x == 0 {
            self.t_minus
        } else if x == self.n {
            self.t_plus
        } else {
            panic!("site {x} carries no thermostat (boundaries are 0 and {})", self.n)
        }
    }
}
