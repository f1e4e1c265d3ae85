//! Moment state, its serialization, and the CSV export.

use flipchain_core::phase_dim;
use std::io::{Read, Write};

/// Means and raw second moments of the phase vector, plus the macroscopic
/// clock. `second` stores E[z z^T] dense row-major; it must stay symmetric
/// and dominate the means (M - m m^T positive semi-definite).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentState {
    pub n: usize,
    pub mean: Vec<f64>,
    pub second: Vec<f64>,
    pub t_macro: f64,
}

impl MomentState {
    /// State with given means and zero fluctuations: M = m m^T.
    pub fn deterministic(n: usize, mean: Vec<f64>) -> Self {
        let d = phase_dim(n);
        assert_eq!(mean.len(), d);
        let mut second = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                second[i * d + j] = mean[i] * mean[j];
            }
        }
        MomentState {
            n,
            mean,
            second,
            t_macro: 0.0,
        }
    }

    /// Zero means with a diagonal covariance.
    pub fn from_diagonal_cov(n: usize, diag: &[f64]) -> Self {
        let d = phase_dim(n);
        assert_eq!(diag.len(), d);
        let mut second = vec![0.0; d * d];
        for i in 0..d {
            second[i * d + i] = diag[i];
        }
        MomentState {
            n,
            mean: vec![0.0; d],
            second,
            t_macro: 0.0,
        }
    }

    /// Moments of the product Gaussian drawn by the sampling spec: means and
    /// per-site variances evaluated on the same u = x/n grid.
    pub fn from_gibbs(params: &flipchain_core::ModelParams, spec: &flipchain_core::GibbsSpec) -> Self {
        let n = params.n;
        let d = phase_dim(n);
        let mut mean = vec![0.0; d];
        let mut var = vec![0.0; d];
        let nf = n as f64;
        for x in 0..=n {
            let u = x as f64 / nf;
            let v = spec.beta_at(u).recip();
            if x >= 1 {
                mean[flipchain_core::idx_r(n, x)] = spec.mean_r_at(u);
                var[flipchain_core::idx_r(n, x)] = v;
            }
            mean[flipchain_core::idx_p(n, x)] = spec.mean_p_at(u);
            var[flipchain_core::idx_p(n, x)] = v;
        }
        let mut second = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                second[i * d + j] = mean[i] * mean[j];
            }
            second[i * d + i] += var[i];
        }
        MomentState {
            n,
            mean,
            second,
            t_macro: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        phase_dim(self.n)
    }

    pub fn second_at(&self, i: usize, j: usize) -> f64 {
        self.second[i * self.dim() + j]
    }

    /// Largest absolute deviation from symmetry in M.
    pub fn asymmetry(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in (i + 1)..d {
                worst = worst.max((self.second[i * d + j] - self.second[j * d + i]).abs());
            }
        }
        worst
    }

    /// Binary checkpoint. Layout, all little-endian: magic "FMOM", u64 n,
    /// f64 t_macro, then the mean vector (2n+1 doubles) and M row-major
    /// ((2n+1)^2 doubles).
    pub fn write_checkpoint<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        out.write_all(b"FMOM")?;
        out.write_all(&(self.n as u64).to_le_bytes())?;
        out.write_all(&self.t_macro.to_le_bytes())?;
        for v in self.mean.iter().chain(self.second.iter()) {
            out.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_checkpoint<R: Read>(input: &mut R) -> std::io::Result<Self> {
        let mut magic = [0u8; 4];
        input.read_exact(&mut magic)?;
        if &magic != b"FMOM" {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                "bad checkpoint magic",
            ));
        }
        let mut b8 = [0u8; 8];
        input.read_exact(&mut b8)?;
        let n = u64::from_le_bytes(b8) as usize;
        input.read_exact(&mut b8)?;
        let t_macro = f64::from_le_bytes(b8);
        let d = phase_dim(n);
        let mut read_vec = |len: usize| -> std::io::Result<Vec<f64>> {
            let mut v = Vec::with_capacity(len);
            for _ in 0..len {
                input.read_exact(&mut b8)?;
                v.push(f64::from_le_bytes(b8));
            }
            Ok(v)
        };
        let mean = read_vec(d)?;
        let second = read_vec(d * d)?;
        Ok(MomentState {
            n,
            mean,
            second,
            t_macro,
        })
    }
}

/// CSV dump of a sequence of recorded moment states: one row per (time,
/// site) with mean stretch, mean momentum, the fluctuation variances, and
/// the mean energy density.
pub fn write_moments_csv<W: Write>(states: &[MomentState], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "t,x,mean_r,mean_p,var_r,var_p,mean_E")?;
    for ms in states {
        let n = ms.n;
        let d = ms.dim();
        let energy = crate::evolve::energy_profile(ms);
        for x in 0..=n {
            let (mr, vr) = if x == 0 {
                (0.0, 0.0)
            } else {
                let i = flipchain_core::idx_r(n, x);
                (ms.mean[i], ms.second[i * d + i] - ms.mean[i] * ms.mean[i])
            };
            let ip = flipchain_core::idx_p(n, x);
            let vp = ms.second[ip * d + ip] - ms.mean[ip] * ms.mean[ip];
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                ms.t_macro, x, mr, ms.mean[ip], vr, vp, energy[x]
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_round_trip_is_exact() {
        let n = 3;
        let d = phase_dim(n);
        let mean: Vec<f64> = (0..d).map(|i| i as f64 * 0.25 - 0.5).collect();
        let mut ms = MomentState::deterministic(n, mean);
        ms.second[2 * d + 5] += 0.125;
        ms.second[5 * d + 2] += 0.125;
        ms.t_macro = 0.375;
        let mut buf = Vec::new();
        ms.write_checkpoint(&mut buf).unwrap();
        let back = MomentState::read_checkpoint(&mut buf.as_slice()).unwrap();
        assert_eq!(ms, back);
    }

    #[test]
    fn checkpoint_rejects_wrong_magic() {
        let buf = b"NOPE0000000000000000".to_vec();
        assert!(MomentState::read_checkpoint(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn gibbs_moments_match_spec_profiles() {
        let params = flipchain_core::ModelParams::new(4, 1.0, 1.0, 1.0, 2.0, 0.7).unwrap();
        let spec = flipchain_core::GibbsSpec::linear_beta(1.0, 2.0, 0.7);
        let ms = MomentState::from_gibbs(&params, &spec);
        let d = ms.dim();
        let i_r2 = flipchain_core::idx_r(4, 2);
        assert!((ms.mean[i_r2] - 0.7).abs() < 1e-14);
        let i_p0 = flipchain_core::idx_p(4, 0);
        assert!((ms.second[i_p0 * d + i_p0] - 1.0).abs() < 1e-14);
        let i_p4 = flipchain_core::idx_p(4, 4);
        assert!((ms.second[i_p4 * d + i_p4] - 2.0).abs() < 1e-14);
        assert_eq!(ms.asymmetry(), 0.0);
    }
}
