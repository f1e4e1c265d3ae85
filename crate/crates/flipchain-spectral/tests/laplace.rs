//! Boundary momentum signals by two fully independent routes: direct
//! moment integration in site space versus numerical inversion of the
//! closed-form frequency-domain transforms.

use flipchain_core::ModelParams;
use flipchain_spectral::{boundary_laplace_crosscheck, invert_boundary_signals};

fn params(n: usize, tau: f64) -> ModelParams {
    ModelParams::new(n, 0.9, 1.1, 1.0, 1.0, tau).expect("valid parameters")
}

fn time_grid(t_star: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| t_star * i as f64 / (points - 1) as f64)
        .collect()
}

/// Two sine modes over the bond index; sums to zero exactly because each
/// full-period mode does.
fn sine_stretch(n: usize) -> Vec<f64> {
    let m = (n + 1) as f64;
    (1..=n)
        .map(|x| {
            let u = x as f64 / m;
            0.4 * (std::f64::consts::TAU * u).sin() + 0.2 * (2.0 * std::f64::consts::TAU * u).sin()
        })
        .collect()
}

#[test]
fn zero_data_and_zero_tension_give_zero_by_both_routes() {
    let params = params(8, 0.0);
    let grid = time_grid(0.2, 21);
    let report = boundary_laplace_crosscheck(
        &params,
        &vec![0.0; 8],
        &vec![0.0; 9],
        0.2,
        &grid,
        1 << 10,
        1e4,
    );
    assert!(report.time_domain.diff.iter().all(|&v| v == 0.0));
    assert!(report.time_domain.sum.iter().all(|&v| v == 0.0));
    assert!(report.inverted.diff.iter().all(|&v| v == 0.0));
    assert!(report.inverted.sum.iter().all(|&v| v == 0.0));
    assert_eq!(report.diff_l2, 0.0);
    assert_eq!(report.sum_l2, 0.0);
}

#[test]
fn routes_agree_on_a_generic_pull() {
    let n = 16;
    let params = params(n, 0.5);
    let t_star = 0.25;
    let grid = time_grid(t_star, 51);
    let report = boundary_laplace_crosscheck(
        &params,
        &sine_stretch(n),
        &vec![0.0; n + 1],
        t_star,
        &grid,
        1 << 16,
        1e5,
    );
    eprintln!(
        "crosscheck: diff_l2 {:.3e} (half-nodes {:.3e}), sum_l2 {:.3e} (half-nodes {:.3e}), tail bound {:.3e}",
        report.diff_l2, report.diff_l2_half_nodes, report.sum_l2, report.sum_l2_half_nodes,
        report.tail_bound
    );
    let peak_d = report
        .time_domain
        .diff
        .iter()
        .fold(0.0f64, |a, &v| a.max(v.abs()));
    let peak_s = report
        .time_domain
        .sum
        .iter()
        .fold(0.0f64, |a, &v| a.max(v.abs()));
    eprintln!("signal peaks: |diff| {:.3e}, |sum| {:.3e}", peak_d, peak_s);
    assert!(peak_d > 1e-3, "test signal too small to be meaningful");
    assert!(peak_s > 1e-3, "test signal too small to be meaningful");
    assert!(report.converged, "doubling nodes should not help past the floor");
    // measured 2.9e-5 and 4.8e-5 at this node count against signal peaks
    // of 0.14 and 0.32; the bound leaves generous room
    assert!(report.diff_l2 < 1e-3, "diff channel disagrees: {:.3e}", report.diff_l2);
    assert!(report.sum_l2 < 1e-3, "sum channel disagrees: {:.3e}", report.sum_l2);
}

#[test]
fn quadrature_error_falls_with_node_count_until_the_floor() {
    let n = 12;
    let params = params(n, 0.4);
    let t_star = 0.2;
    let grid = time_grid(t_star, 41);
    let r0 = sine_stretch(n);
    let p0 = vec![0.0; n + 1];
    let reference = flipchain_spectral::time_domain_boundary_signals(&params, &r0, &p0, &grid, 0.01);
    let mut last = f64::INFINITY;
    for shift in [11usize, 12, 13, 14, 15] {
        let inv = invert_boundary_signals(&params, &r0, &p0, t_star, &grid, 1 << shift, 1e5);
        let mut acc = 0.0;
        for i in 1..grid.len() {
            let a = reference.diff[i] - inv.diff[i];
            let b = reference.diff[i - 1] - inv.diff[i - 1];
            acc += 0.5 * (a * a + b * b) * (grid[i] - grid[i - 1]);
        }
        let l2 = acc.sqrt();
        eprintln!("nodes 2^{shift}: diff l2 {:.3e}", l2);
        assert!(
            l2 <= last * 1.05 + 1e-12,
            "error grew when refining: {l2:.3e} after {last:.3e}"
        );
        last = l2;
    }
}
