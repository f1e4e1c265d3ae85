//! Single-trajectory driver: snapshots at a fixed stride plus trapezoid
//! time-integrals of the boundary observables, accumulated in compensated
//! arithmetic because the n^2 clock makes the integrals long sums of tiny
//! increments.

use crate::config::IntegratorConfig;
use crate::step::step;
use flipchain_core::{ChainState, ModelParams};
use rand::Rng;

#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

pub const NUM_BOUNDARY_INTEGRALS: usize = 10;

/// Macroscopic-time integrals of the ten boundary observables tracked by the
/// ensemble statistics, in this order:
/// p_0; p_n; r_1; r_n - tau_plus; p_0^2 - T-; p_n^2 - T+;
/// j_{0,1}; j_{n-1,n}; p_0 p_1; p_{n-1} p_n.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BoundaryIntegrals {
    pub p0: f64,
    pub pn: f64,
    pub r1: f64,
    pub rn_minus_tau: f64,
    pub p0sq_minus_tminus: f64,
    pub pnsq_minus_tplus: f64,
    pub current_left: f64,
    pub current_right: f64,
    pub p0_p1: f64,
    pub pnm1_pn: f64,
}

impl BoundaryIntegrals {
    pub fn as_array(&self) -> [f64; NUM_BOUNDARY_INTEGRALS] {
        [
            self.p0,
            self.pn,
            self.r1,
            self.rn_minus_tau,
            self.p0sq_minus_tminus,
            self.pnsq_minus_tplus,
            self.current_left,
            self.current_right,
            self.p0_p1,
            self.pnm1_pn,
        ]
    }

    pub const NAMES: [&'static str; NUM_BOUNDARY_INTEGRALS] = [
        "int_p0",
        "int_pn",
        "int_r1",
        "int_rn_minus_tau",
        "int_p0sq_minus_tminus",
        "int_pnsq_minus_tplus",
        "int_current_left",
        "int_current_right",
        "int_p0_p1",
        "int_pnm1_pn",
    ];
}

fn boundary_integrands(state: &ChainState, params: &ModelParams) -> [f64; NUM_BOUNDARY_INTEGRALS] {
    let n = state.n();
    let (p0, pn) = (state.p[0], state.p[n]);
    let (r1, rn) = (state.r[0], state.r[n - 1]);
    [
        p0,
        pn,
        r1,
        rn - params.tau_plus,
        p0 * p0 - params.t_minus,
        pn * pn - params.t_plus,
        -p0 * r1,
        -state.p[n - 1] * rn,
        p0 * state.p[1],
        state.p[n - 1] * pn,
    ]
}

/// Snapshots at the recording stride plus the accumulated boundary
/// time-integrals over the whole run.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub snapshots: Vec<ChainState>,
    pub integrals: BoundaryIntegrals,
}

/// Run one trajectory from `initial`. Deterministic given the RNG state: the
/// caller derives per-trajectory RNGs from (master seed, index). The initial
/// state is always the first snapshot; the final state is always the last.
pub fn run_trajectory<R: Rng + ?Sized>(
    initial: ChainState,
    cfg: &IntegratorConfig,
    params: &ModelParams,
    rng: &mut R,
) -> Result<TrajectoryRecord, String> {
    let n = params.n;
    assert_eq!(initial.n(), n, "state size does not match params");
    let num_steps = cfg.num_steps(n);
    let dt_macro = cfg.dtau / (n * n) as f64;

    let mut state = initial;
    let mut times = vec![state.t_macro];
    let mut snapshots = vec![state.clone()];
    let mut acc = [Kahan::default(); NUM_BOUNDARY_INTEGRALS];
    let mut prev = boundary_integrands(&state, params);

    for i in 1..=num_steps {
        step(&mut state, cfg, params, rng)?;
        let cur = boundary_integrands(&state, params);
        for (a, (lo, hi)) in acc.iter_mut().zip(prev.iter().zip(cur.iter())) {
            a.add(0.5 * (lo + hi) * dt_macro);
        }
        prev = cur;
        if i % cfg.record_stride == 0 || i == num_steps {
            times.push(state.t_macro);
            snapshots.push(state.clone());
        }
    }

    let v: Vec<f64> = acc.iter().map(|k| k.sum).collect();
    Ok(TrajectoryRecord {
        times,
        snapshots,
        integrals: BoundaryIntegrals {
            p0: v[0],
            pn: v[1],
            r1: v[2],
            rn_minus_tau: v[3],
            p0sq_minus_tminus: v[4],
            pnsq_minus_tplus: v[5],
            current_left: v[6],
            current_right: v[7],
            p0_p1: v[8],
            pnm1_pn: v[9],
        },
    })
}
