//! Trapezoid-in-time solvers for the two limiting equations.
//!
//! The stretch field obeys d_t r = (1/2 gamma) d_u^2 r with r(t,0) = 0 and
//! r(t,1) = tau_plus. The energy field obeys
//! d_t e = (1/4 gamma) d_u^2 (e + r^2/2) with e(t,0) = T- and
//! e(t,1) = T+ + tau_plus^2/2. The quadratic term only involves the
//! separately computed stretch path, so every step of either solver is one
//! constant-band tridiagonal solve.

use crate::field::{FieldKind, MacroField};
use crate::grid::Grid1D;
use flipchain_core::ModelParams;

fn diffusivity(kind: FieldKind, params: &ModelParams) -> f64 {
    match kind {
        FieldKind::Stretch => 1.0 / (2.0 * params.gamma),
        FieldKind::Energy => 1.0 / (4.0 * params.gamma),
    }
}

/// Solves (1 + 2a) x_j - a (x_{j-1} + x_{j+1}) = rhs_j in place. The system
/// is strictly diagonally dominant for a >= 0, so no pivoting is needed.
fn solve_tridiag_constant(a: f64, rhs: &mut [f64], scratch: &mut [f64]) {
    let k = rhs.len();
    let diag = 1.0 + 2.0 * a;
    scratch[0] = -a / diag;
    rhs[0] /= diag;
    for i in 1..k {
        let den = diag + a * scratch[i - 1];
        scratch[i] = -a / den;
        rhs[i] = (rhs[i] + a * rhs[i - 1]) / den;
    }
    for i in (0..k - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] -= scratch[i] * next;
    }
}

/// One trapezoid step of d_t f = nu d_u^2 (f + w), where w is a fully known
/// auxiliary profile supplied at both endpoints of the step (None for a pure
/// heat step). Interior nodes update; boundaries stay pinned at (lo, hi).
fn cn_step(
    f: &mut [f64],
    w: Option<(&[f64], &[f64])>,
    nu: f64,
    dt: f64,
    du: f64,
    lo: f64,
    hi: f64,
    rhs: &mut [f64],
    scratch: &mut [f64],
) {
    let m = f.len() - 1;
    let a = 0.5 * nu * dt / (du * du);
    for j in 1..m {
        let mut r = f[j] + a * (f[j - 1] - 2.0 * f[j] + f[j + 1]);
        if let Some((wo, wn)) = w {
            r += a * (wo[j - 1] - 2.0 * wo[j] + wo[j + 1]);
            r += a * (wn[j - 1] - 2.0 * wn[j] + wn[j + 1]);
        }
        rhs[j - 1] = r;
    }
    // boundary values of the implicit unknown move to the right side
    rhs[0] += a * lo;
    rhs[m - 2] += a * hi;
    solve_tridiag_constant(a, &mut rhs[..m - 1], scratch);
    f[1..m].copy_from_slice(&rhs[..m - 1]);
    f[0] = lo;
    f[m] = hi;
}

/// Checks shape and finiteness, warns once if the ends disagree with the
/// imposed boundary values, and returns the profile with both ends pinned.
fn pin_boundaries(
    kind: FieldKind,
    f0: &[f64],
    params: &ModelParams,
    grid: &Grid1D,
) -> Vec<f64> {
    assert_eq!(
        f0.len(),
        grid.m + 1,
        "profile and grid disagree on node count"
    );
    assert!(
        f0.iter().all(|v| v.is_finite()),
        "initial profile contains non-finite values"
    );
    let (lo, hi) = kind.boundary_values(params);
    let scale = 1.0 + lo.abs().max(hi.abs());
    if (f0[0] - lo).abs() > 1e-9 * scale || (f0[grid.m] - hi).abs() > 1e-9 * scale {
        eprintln!(
            "note: initial {kind:?} profile ends ({:.4e}, {:.4e}) differ from the imposed \
             boundary values ({lo:.4e}, {hi:.4e}); pinning and proceeding",
            f0[0],
            f0[grid.m]
        );
    }
    let mut f = f0.to_vec();
    f[0] = lo;
    f[grid.m] = hi;
    f
}

/// Integrates the stretch equation from `r0` up to `t_end`, recording every
/// step; the first entry is the boundary-pinned initial profile at t = 0.
/// A final short step lands exactly on `t_end`.
pub fn solve_stretch(
    r0: &[f64],
    params: &ModelParams,
    t_end: f64,
    grid: &Grid1D,
) -> Vec<MacroField> {
    assert!(
        t_end >= 0.0 && t_end.is_finite(),
        "end time must be nonnegative, got {t_end}"
    );
    let kind = FieldKind::Stretch;
    if !grid.preserves_hull(params.gamma) {
        eprintln!(
            "note: dt = {} exceeds the hull-preserving bound gamma du^2 = {:.4e}; \
             the scheme stays stable but extrema may overshoot",
            grid.dt,
            params.gamma * grid.du() * grid.du()
        );
    }
    let mut f = pin_boundaries(kind, r0, params, grid);
    let (lo, hi) = kind.boundary_values(params);
    let nu = diffusivity(kind, params);
    let steps = ((t_end / grid.dt) - 1e-9).ceil().max(0.0) as usize;
    let mut path = Vec::with_capacity(steps + 1);
    path.push(MacroField::new(kind, 0.0, f.clone()));
    let mut rhs = vec![0.0; grid.m - 1];
    let mut scratch = vec![0.0; grid.m - 1];
    let mut t = 0.0;
    for s in 0..steps {
        let t_next = if s + 1 == steps { t_end } else { t + grid.dt };
        cn_step(
            &mut f,
            None,
            nu,
            t_next - t,
            grid.du(),
            lo,
            hi,
            &mut rhs,
            &mut scratch,
        );
        t = t_next;
        path.push(MacroField::new(kind, t, f.clone()));
    }
    path
}

/// Integrates the energy equation along a precomputed stretch path. The
/// returned path shares the stretch path's time stamps; the quadratic source
/// r^2/2 is averaged over each step's endpoints, keeping the scheme second
/// order.
pub fn solve_energy(
    e0: &[f64],
    r_path: &[MacroField],
    params: &ModelParams,
    grid: &Grid1D,
) -> Vec<MacroField> {
    assert!(!r_path.is_empty(), "stretch path is empty");
    assert!(
        r_path.iter().all(|f| f.values.len() == grid.m + 1),
        "stretch path and grid disagree on node count"
    );
    assert!(
        e0.iter().all(|&v| v >= 0.0),
        "energy profile must be nonnegative"
    );
    let kind = FieldKind::Energy;
    let mut f = pin_boundaries(kind, e0, params, grid);
    let (lo, hi) = kind.boundary_values(params);
    let nu = diffusivity(kind, params);
    let half_sq = |vals: &[f64]| vals.iter().map(|&r| 0.5 * r * r).collect::<Vec<f64>>();
    let mut path = Vec::with_capacity(r_path.len());
    path.push(MacroField::new(kind, r_path[0].t, f.clone()));
    let mut rhs = vec![0.0; grid.m - 1];
    let mut scratch = vec![0.0; grid.m - 1];
    let mut w_old = half_sq(&r_path[0].values);
    for win in r_path.windows(2) {
        let dt = win[1].t - win[0].t;
        assert!(dt > 0.0, "stretch path times must increase");
        let w_new = half_sq(&win[1].values);
        cn_step(
            &mut f,
            Some((&w_old, &w_new)),
            nu,
            dt,
            grid.du(),
            lo,
            hi,
            &mut rhs,
            &mut scratch,
        );
        path.push(MacroField::new(kind, win[1].t, f.clone()));
        w_old = w_new;
    }
    path
}

/// Stationary energy profile when the stretch sits at its ramp tau_plus u:
/// e*(u) = T- + (T+ + tau_plus^2 - T-) u - tau_plus^2 u^2 / 2, the unique
/// profile making e + r^2/2 linear between the imposed boundary values.
pub fn stationary_energy_profile(params: &ModelParams, grid: &Grid1D) -> Vec<f64> {
    let tau2 = params.tau_plus * params.tau_plus;
    grid.nodes()
        .iter()
        .map(|&u| params.t_minus + (params.t_plus + tau2 - params.t_minus) * u - 0.5 * tau2 * u * u)
        .collect()
}
