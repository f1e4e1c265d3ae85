//! Time-integrated weak-form residuals for computed paths.
//!
//! For a test profile G with G(0) = G(1) = 0, integrating the stretch
//! equation against G and moving both derivatives onto G gives
//!
//!   int G (r(T) - r(0)) du
//!     = (1/2 gamma) [ int_0^T int G'' r du dt  -  G'(1) tau_plus T ],
//!
//! and with phi = e + r^2/2 the energy equation gives
//!
//!   int G (e(T) - e(0)) du
//!     = (1/4 gamma) [ int_0^T int G'' phi du dt
//!                     - ( G'(1) (T+ + tau_plus^2) - G'(0) T- ) T ].
//!
//! Both sides are evaluated with trapezoid quadrature in u and t; the
//! returned residual (left minus right) vanishes at the scheme's
//! convergence order.

use crate::field::MacroField;
use crate::grid::Grid1D;
use flipchain_core::ModelParams;

/// Smooth test profile vanishing at both ends, with analytic derivatives.
#[derive(Clone, Copy)]
pub struct TestFunction {
    pub name: &'static str,
    g: fn(f64) -> f64,
    d1: fn(f64) -> f64,
    d2: fn(f64) -> f64,
}

impl TestFunction {
    /// G(u) = u(1-u). G'' is constant, so the spatial trapezoid sum is exact
    /// whenever the field is piecewise linear in u.
    pub fn bump() -> Self {
        TestFunction {
            name: "bump",
            g: |u| u * (1.0 - u),
            d1: |u| 1.0 - 2.0 * u,
            d2: |_| -2.0,
        }
    }

    /// G(u) = sin(pi u).
    pub fn sine() -> Self {
        TestFunction {
            name: "sine",
            g: |u| (std::f64::consts::PI * u).sin(),
            d1: |u| std::f64::consts::PI * (std::f64::consts::PI * u).cos(),
            d2: |u| {
                -std::f64::consts::PI * std::f64::consts::PI * (std::f64::consts::PI * u).sin()
            },
        }
    }

    /// G(u) = u^2 (1-u)^2, whose first derivative also vanishes at both
    /// ends, dropping the boundary terms entirely.
    pub fn quartic() -> Self {
        TestFunction {
            name: "quartic",
            g: |u| u * u * (1.0 - u) * (1.0 - u),
            d1: |u| 2.0 * u * (1.0 - u) * (1.0 - 2.0 * u),
            d2: |u| 2.0 * (1.0 - 6.0 * u + 6.0 * u * u),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.g)(u)
    }

    pub fn deriv(&self, u: f64) -> f64 {
        (self.d1)(u)
    }

    pub fn second_deriv(&self, u: f64) -> f64 {
        (self.d2)(u)
    }
}

fn trapz(values: &[f64], h: f64) -> f64 {
    let s: f64 = values.iter().sum();
    h * (s - 0.5 * (values[0] + values[values.len() - 1]))
}

fn time_trapz(times: &[f64], vals: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..times.len() {
        acc += 0.5 * (vals[i] + vals[i - 1]) * (times[i] - times[i - 1]);
    }
    acc
}

/// Spatial pairing int f(u) w(u) du over the grid nodes.
fn pair(values: &[f64], grid: &Grid1D, w: impl Fn(f64) -> f64) -> f64 {
    let m = grid.m as f64;
    let weighted: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(j, &v)| v * w(j as f64 / m))
        .collect();
    trapz(&weighted, grid.du())
}

/// Residual of the time-integrated stretch identity along a recorded path.
pub fn weak_residual_stretch(
    path: &[MacroField],
    g: &TestFunction,
    params: &ModelParams,
    grid: &Grid1D,
) -> f64 {
    assert!(path.len() >= 2, "need at least two recorded times");
    let lhs = pair(&path[path.len() - 1].values, grid, |u| g.eval(u))
        - pair(&path[0].values, grid, |u| g.eval(u));
    let times: Vec<f64> = path.iter().map(|f| f.t).collect();
    let bulk: Vec<f64> = path
        .iter()
        .map(|f| pair(&f.values, grid, |u| g.second_deriv(u)))
        .collect();
    let span = times[times.len() - 1] - times[0];
    let rhs = (time_trapz(&times, &bulk) - g.deriv(1.0) * params.tau_plus * span)
        / (2.0 * params.gamma);
    lhs - rhs
}

/// Residual of the time-integrated energy identity; needs the stretch path
/// that sourced the energy solve, on the same time stamps.
pub fn weak_residual_energy(
    e_path: &[MacroField],
    r_path: &[MacroField],
    g: &TestFunction,
    params: &ModelParams,
    grid: &Grid1D,
) -> f64 {
    assert!(e_path.len() >= 2, "need at least two recorded times");
    assert_eq!(
        e_path.len(),
        r_path.len(),
        "energy and stretch paths disagree on recorded times"
    );
    let phi = |e: &MacroField, r: &MacroField| -> Vec<f64> {
        assert!(
            (e.t - r.t).abs() <= 1e-12 * (1.0 + e.t.abs()),
            "paths misaligned at t = {} vs {}",
            e.t,
            r.t
        );
        e.values
            .iter()
            .zip(&r.values)
            .map(|(&ev, &rv)| ev + 0.5 * rv * rv)
            .collect()
    };
    let lhs = pair(&e_path[e_path.len() - 1].values, grid, |u| g.eval(u))
        - pair(&e_path[0].values, grid, |u| g.eval(u));
    let times: Vec<f64> = e_path.iter().map(|f| f.t).collect();
    let bulk: Vec<f64> = e_path
        .iter()
        .zip(r_path)
        .map(|(e, r)| pair(&phi(e, r), grid, |u| g.second_deriv(u)))
        .collect();
    let span = times[times.len() - 1] - times[0];
    let tau2 = params.tau_plus * params.tau_plus;
    let boundary = g.deriv(1.0) * (params.t_plus + tau2) - g.deriv(0.0) * params.t_minus;
    let rhs = (time_trapz(&times, &bulk) - boundary * span) / (4.0 * params.gamma);
    lhs - rhs
}
