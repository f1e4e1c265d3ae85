//! Ensemble runner: independent trajectories reduced through a fixed binary
//! tree so the result is bitwise identical for any rayon worker count.

use crate::config::IntegratorConfig;
use crate::trajectory::{run_trajectory, BoundaryIntegrals, NUM_BOUNDARY_INTEGRALS};
use flipchain_core::{energy_density, phase_dim, sample_initial, GibbsSpec, ModelParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::io::Write;

/// RNG for trajectory `index` of an ensemble: the master seed and the index
/// occupy the first 16 bytes of the ChaCha key, so streams never collide.
pub fn trajectory_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

/// Raw per-ensemble sums. Merging two blocks is elementwise addition, which
/// the reduction tree applies in a shape fixed by trajectory indices alone.
struct StatBlock {
    count: u64,
    times: Vec<f64>,
    sum_z: Vec<Vec<f64>>,
    sum_z_sq: Vec<Vec<f64>>,
    sum_e: Vec<Vec<f64>>,
    sum_e_sq: Vec<Vec<f64>>,
    /// Upper-triangle products z_i z_j, i <= j, and their squares.
    sum_zz: Option<Vec<Vec<f64>>>,
    sum_zz_sq: Option<Vec<Vec<f64>>>,
    sum_b: [f64; NUM_BOUNDARY_INTEGRALS],
    sum_b_sq: [f64; NUM_BOUNDARY_INTEGRALS],
}

fn tri_len(d: usize) -> usize {
    d * (d + 1) / 2
}

fn tri_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < d);
    i * d - i * (i + 1) / 2 + j
}

impl StatBlock {
    fn from_trajectory(
        params: &ModelParams,
        cfg: &IntegratorConfig,
        times: Vec<f64>,
        snapshots: &[flipchain_core::ChainState],
        integrals: &BoundaryIntegrals,
    ) -> StatBlock {
        let d = phase_dim(params.n);
        let nt = times.len();
        let mut sum_z = vec![vec![0.0; d]; nt];
        let mut sum_z_sq = vec![vec![0.0; d]; nt];
        let mut sum_e = vec![vec![0.0; params.n + 1]; nt];
        let mut sum_e_sq = vec![vec![0.0; params.n + 1]; nt];
        let mut sum_zz = cfg.collect_cov.then(|| vec![vec![0.0; tri_len(d)]; nt]);
        let mut sum_zz_sq = cfg.collect_cov.then(|| vec![vec![0.0; tri_len(d)]; nt]);
        for (t, snap) in snapshots.iter().enumerate() {
            let z = snap.phase_vector();
            for i in 0..d {
                sum_z[t][i] = z[i];
                sum_z_sq[t][i] = z[i] * z[i];
            }
            for (x, e) in energy_density(snap).into_iter().enumerate() {
                sum_e[t][x] = e;
                sum_e_sq[t][x] = e * e;
            }
            if let (Some(zz), Some(zz_sq)) = (sum_zz.as_mut(), sum_zz_sq.as_mut()) {
                let mut idx = 0;
                for i in 0..d {
                    for j in i..d {
                        let v = z[i] * z[j];
                        zz[t][idx] = v;
                        zz_sq[t][idx] = v * v;
                        idx += 1;
                    }
                }
            }
        }
        let b = integrals.as_array();
        let mut sum_b_sq = [0.0; NUM_BOUNDARY_INTEGRALS];
        for (s, v) in sum_b_sq.iter_mut().zip(b.iter()) {
            *s = v * v;
        }
        StatBlock {
            count: 1,
            times,
            sum_z,
            sum_z_sq,
            sum_e,
            sum_e_sq,
            sum_zz,
            sum_zz_sq,
            sum_b: b,
            sum_b_sq,
        }
    }

    fn merge(&mut self, other: StatBlock) {
        debug_assert_eq!(self.times, other.times);
        self.count += other.count;
        let add = |a: &mut Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
            for (ra, rb) in a.iter_mut().zip(b.iter()) {
                for (va, vb) in ra.iter_mut().zip(rb.iter()) {
                    *va += vb;
                }
            }
        };
        add(&mut self.sum_z, &other.sum_z);
        add(&mut self.sum_z_sq, &other.sum_z_sq);
        add(&mut self.sum_e, &other.sum_e);
        add(&mut self.sum_e_sq, &other.sum_e_sq);
        if let (Some(a), Some(b)) = (self.sum_zz.as_mut(), other.sum_zz.as_ref()) {
            add(a, b);
        }
        if let (Some(a), Some(b)) = (self.sum_zz_sq.as_mut(), other.sum_zz_sq.as_ref()) {
            add(a, b);
        }
        for i in 0..NUM_BOUNDARY_INTEGRALS {
            self.sum_b[i] += other.sum_b[i];
            self.sum_b_sq[i] += other.sum_b_sq[i];
        }
    }
}

fn reduce_range<F>(lo: u64, hi: u64, leaf: &F) -> Result<StatBlock, String>
where
    F: Fn(u64) -> Result<StatBlock, String> + Sync,
{
    if hi - lo == 1 {
        return leaf(lo);
    }
    let mid = lo + (hi - lo) / 2;
    let (a, b) = rayon::join(|| reduce_range(lo, mid, leaf), || reduce_range(mid, hi, leaf));
    let mut a = a?;
    a.merge(b?);
    Ok(a)
}

/// Time-integral estimates at the boundaries, ensemble mean and standard
/// error, ordered as in BoundaryIntegrals::NAMES.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryStats {
    pub mean: [f64; NUM_BOUNDARY_INTEGRALS],
    pub se: [f64; NUM_BOUNDARY_INTEGRALS],
}

impl BoundaryStats {
    pub fn get(&self, name: &str) -> Option<(f64, f64)> {
        BoundaryIntegrals::NAMES
            .iter()
            .position(|&s| s == name)
            .map(|i| (self.mean[i], self.se[i]))
    }
}

/// Ensemble averages at the recorded times. Profile vectors are indexed by
/// site; the second-moment matrix (present when the run collected it) is the
/// raw E[z z^T], stored dense row-major.
#[derive(Debug, Clone)]
pub struct EnsembleStats {
    pub n: usize,
    pub n_traj: usize,
    pub times: Vec<f64>,
    pub mean_r: Vec<Vec<f64>>,
    pub se_r: Vec<Vec<f64>>,
    pub mean_p: Vec<Vec<f64>>,
    pub se_p: Vec<Vec<f64>>,
    pub energy_profile: Vec<Vec<f64>>,
    pub se_energy: Vec<Vec<f64>>,
    pub second_moment: Option<Vec<Vec<f64>>>,
    pub second_moment_se: Option<Vec<Vec<f64>>>,
    pub boundary: BoundaryStats,
}

impl EnsembleStats {
    /// Covariance matrix at recorded time index `t`: E[zz^T] - mean mean^T.
    pub fn cov_at(&self, t: usize) -> Option<Vec<f64>> {
        let m = self.second_moment.as_ref()?;
        let d = phase_dim(self.n);
        let mean = self.mean_z(t);
        let mut cov = m[t].clone();
        for i in 0..d {
            for j in 0..d {
                cov[i * d + j] -= mean[i] * mean[j];
            }
        }
        Some(cov)
    }

    /// Mean phase vector (r_1..r_n, p_0..p_n) at time index `t`.
    pub fn mean_z(&self, t: usize) -> Vec<f64> {
        let mut z = Vec::with_capacity(phase_dim(self.n));
        z.extend_from_slice(&self.mean_r[t]);
        z.extend_from_slice(&self.mean_p[t]);
        z
    }
}

/// Piecewise-constant profile embedding: values[x] on u in
/// [x/m, (x+1)/m) with m = values.len(); u = 1 falls in the last cell.
pub fn embed_profile(values: &[f64], u: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u), "u = {u} outside [0,1]");
    let m = values.len();
    let cell = ((u * m as f64) as usize).min(m - 1);
    values[cell]
}

/// Run `n_traj` independent trajectories from `spec` and reduce.
pub fn run_ensemble(
    spec: &GibbsSpec,
    cfg: &IntegratorConfig,
    params: &ModelParams,
    n_traj: usize,
    master_seed: u64,
) -> Result<EnsembleStats, String> {
    if n_traj == 0 {
        return Err("n_traj must be at least 1".into());
    }
    let leaf = |i: u64| -> Result<StatBlock, String> {
        let mut rng = trajectory_rng(master_seed, i);
        let initial = sample_initial(params, spec, &mut rng);
        let rec = run_trajectory(initial, cfg, params, &mut rng)?;
        Ok(StatBlock::from_trajectory(
            params,
            cfg,
            rec.times,
            &rec.snapshots,
            &rec.integrals,
        ))
    };
    let block = reduce_range(0, n_traj as u64, &leaf)?;
    Ok(finalize(params, block))
}

fn finalize(params: &ModelParams, block: StatBlock) -> EnsembleStats {
    let n = params.n;
    let d = phase_dim(n);
    let count = block.count as f64;
    let nt = block.times.len();
    let mean_se = |sum: f64, sum_sq: f64| -> (f64, f64) {
        let mean = sum / count;
        let var = (sum_sq / count - mean * mean).max(0.0);
        (mean, (var / count).sqrt())
    };

    let mut mean_r = vec![vec![0.0; n]; nt];
    let mut se_r = vec![vec![0.0; n]; nt];
    let mut mean_p = vec![vec![0.0; n + 1]; nt];
    let mut se_p = vec![vec![0.0; n + 1]; nt];
    let mut energy = vec![vec![0.0; n + 1]; nt];
    let mut se_energy = vec![vec![0.0; n + 1]; nt];
    for t in 0..nt {
        for i in 0..d {
            let (m, s) = mean_se(block.sum_z[t][i], block.sum_z_sq[t][i]);
            if i < n {
                mean_r[t][i] = m;
                se_r[t][i] = s;
            } else {
                mean_p[t][i - n] = m;
                se_p[t][i - n] = s;
            }
        }
        for x in 0..=n {
            let (m, s) = mean_se(block.sum_e[t][x], block.sum_e_sq[t][x]);
            energy[t][x] = m;
            se_energy[t][x] = s;
        }
    }

    let (second_moment, second_moment_se) = match (block.sum_zz, block.sum_zz_sq) {
        (Some(zz), Some(zz_sq)) => {
            let mut ms = Vec::with_capacity(nt);
            let mut ses = Vec::with_capacity(nt);
            for t in 0..nt {
                let mut m = vec![0.0; d * d];
                let mut s = vec![0.0; d * d];
                for i in 0..d {
                    for j in i..d {
                        let idx = tri_index(d, i, j);
                        let (mv, sv) = mean_se(zz[t][idx], zz_sq[t][idx]);
                        m[i * d + j] = mv;
                        m[j * d + i] = mv;
                        s[i * d + j] = sv;
                        s[j * d + i] = sv;
                    }
                }
                ms.push(m);
                ses.push(s);
            }
            (Some(ms), Some(ses))
        }
        _ => (None, None),
    };

    let mut bmean = [0.0; NUM_BOUNDARY_INTEGRALS];
    let mut bse = [0.0; NUM_BOUNDARY_INTEGRALS];
    for i in 0..NUM_BOUNDARY_INTEGRALS {
        let (m, s) = mean_se(block.sum_b[i], block.sum_b_sq[i]);
        bmean[i] = m;
        bse[i] = s;
    }

    EnsembleStats {
        n,
        n_traj: block.count as usize,
        times: block.times,
        mean_r,
        se_r,
        mean_p,
        se_p,
        energy_profile: energy,
        se_energy,
        second_moment,
        second_moment_se,
        boundary: BoundaryStats {
            mean: bmean,
            se: bse,
        },
    }
}

/// CSV profile dump, one row per (time, site):
/// t,x,mean_r,mean_p,mean_E,se_r,se_p,se_E. Site 0 reports the structural
/// r_0 = 0 with zero error.
pub fn write_profile_csv<W: Write>(stats: &EnsembleStats, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "t,x,mean_r,mean_p,mean_E,se_r,se_p,se_E")?;
    for (t, time) in stats.times.iter().enumerate() {
        for x in 0..=stats.n {
            let (mr, sr) = if x == 0 {
                (0.0, 0.0)
            } else {
                (stats.mean_r[t][x - 1], stats.se_r[t][x - 1])
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                time,
                x,
                mr,
                stats.mean_p[t][x],
                stats.energy_profile[t][x],
                sr,
                stats.se_p[t][x],
                stats.se_energy[t][x]
            )?;
        }
    }
    Ok(())
}

/// Boundary time-integral summary with standard errors.
pub fn boundary_summary_json(stats: &EnsembleStats) -> serde_json::Value {
    let mut integrals = serde_json::Map::new();
    for (i, name) in BoundaryIntegrals::NAMES.iter().enumerate() {
        integrals.insert(
            (*name).into(),
            json!({ "mean": stats.boundary.mean[i], "se": stats.boundary.se[i] }),
        );
    }
    json!({
        "n": stats.n,
        "n_traj": stats.n_traj,
        "t_end": stats.times.last().copied().unwrap_or(0.0),
        "boundary_integrals": integrals,
    })
}
