//! The verification experiments behind the `verify` subcommand.
//!
//! Each experiment takes a parsed configuration, runs one comparison between
//! independent routes (Monte Carlo vs exact moments, lattice vs limit
//! equation, measured scaling vs predicted exponent), and returns a report
//! with the raw table, the derived metrics, and pass/fail checks.

pub mod assumptions;
pub mod boundary;
pub mod equip;
pub mod hydro;
pub mod mc_check;

use crate::config::ExperimentConfig;
use crate::report::Report;

pub const EXPERIMENTS: [&str; 6] = [
    "mc-vs-moments",
    "hydro-stretch",
    "hydro-energy",
    "equipartition",
    "boundary-scalings",
    "assumptions",
];

pub fn run(name: &str, cfg: &ExperimentConfig) -> Result<Report, String> {
    match name {
        "mc-vs-moments" => mc_check::run(cfg),
        "hydro-stretch" => hydro::run_stretch(cfg),
        "hydro-energy" => hydro::run_energy(cfg),
        "equipartition" => equip::run(cfg),
        "boundary-scalings" => boundary::run(cfg),
        "assumptions" => assumptions::run(cfg),
        other => Err(format!(
            "unknown experiment {other}; known: {}",
            EXPERIMENTS.join(", ")
        )),
    }
}

/// Midpoint of site x's macroscopic cell [x/(n+1), (x+1)/(n+1)).
pub(crate) fn cell_mid(n: usize, x: usize) -> f64 {
    (x as f64 + 0.5) / (n + 1) as f64
}

/// Online trapezoid rule over samples arriving in time order.
pub(crate) struct Trapezoid {
    prev: Option<(f64, f64)>,
    acc: f64,
}

impl Trapezoid {
    pub fn new() -> Self {
        Trapezoid { prev: None, acc: 0.0 }
    }

    pub fn push(&mut self, t: f64, v: f64) {
        if let Some((t0, v0)) = self.prev {
            debug_assert!(t >= t0, "samples out of order");
            self.acc += 0.5 * (v + v0) * (t - t0);
        }
        self.prev = Some((t, v));
    }

    pub fn value(&self) -> f64 {
        self.acc
    }
}

/// Linear interpolation of node values on the uniform grid over [0, 1].
pub(crate) fn sample_nodes(values: &[f64], u: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u));
    let m = values.len() - 1;
    let pos = u * m as f64;
    let j = (pos as usize).min(m - 1);
    let w = pos - j as f64;
    values[j] * (1.0 - w) + values[j + 1] * w
}

/// Integral of f*g over [0, 1] by the trapezoid rule on uniform nodes.
pub(crate) fn node_pairing(values: &[f64], g: impl Fn(f64) -> f64) -> f64 {
    let m = values.len() - 1;
    let du = 1.0 / m as f64;
    let mut acc = 0.0;
    for (j, &v) in values.iter().enumerate() {
        let w = if j == 0 || j == m { 0.5 } else { 1.0 };
        acc += w * v * g(j as f64 * du);
    }
    acc * du
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_matches_closed_form() {
        let mut tr = Trapezoid::new();
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            tr.push(t, 3.0 * t);
        }
        assert!((tr.value() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn node_sampling_is_exact_on_linear_data() {
        let values: Vec<f64> = (0..=10).map(|j| 2.0 * j as f64 / 10.0 - 0.3).collect();
        for &u in &[0.0, 0.05, 0.31, 0.999, 1.0] {
            assert!((sample_nodes(&values, u) - (2.0 * u - 0.3)).abs() < 1e-12);
        }
    }

    #[test]
    fn node_pairing_integrates_polynomials() {
        let m = 2000;
        let values: Vec<f64> = (0..=m).map(|j| (j as f64 / m as f64).powi(2)).collect();
        // int u^2 * u du = 1/4
        let got = node_pairing(&values, |u| u);
        assert!((got - 0.25).abs() < 1e-6);
    }
}
