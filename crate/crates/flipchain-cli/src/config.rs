//! Flat key=value experiment configuration.
//!
//! One file drives every subcommand. Unknown keys are errors so a typo
//! cannot silently fall back to a default, and the canonical hash of the
//! parsed config is embedded in every summary so outputs are traceable
//! to the exact inputs that produced them.

use flipchain_core::{GibbsSpec, ModelParams};
use flipchain_sim::IntegratorConfig;

/// Everything an experiment run needs, with defaults tuned so a bare
/// `flipchain verify <name>` finishes in minutes on one core.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Chain size for single-size runs.
    pub n: usize,
    /// Sizes for scaling sweeps, strictly increasing.
    pub n_list: Vec<usize>,
    pub gamma: f64,
    pub gamma_tilde: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    pub tau_plus: f64,
    /// Initial ensemble: "equilibrium" or "linear-beta".
    pub preset: String,
    pub dtau: f64,
    /// Macroscopic end time.
    pub t_end: f64,
    pub record_stride: usize,
    pub grid_m: usize,
    pub grid_dt: f64,
    pub trajectories: usize,
    pub master_seed: u64,
    pub output_dir: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: "mc-vs-moments".to_string(),
            n: 16,
            n_list: vec![32, 64, 128, 256],
            gamma: 0.9,
            gamma_tilde: 1.1,
            t_minus: 1.0,
            t_plus: 1.0,
            tau_plus: 0.5,
            preset: "equilibrium".to_string(),
            dtau: 0.1,
            t_end: 0.1,
            record_stride: 1,
            grid_m: 256,
            grid_dt: 1e-5,
            trajectories: 2000,
            master_seed: 0x5eed_cafe_f00d_0001,
            output_dir: None,
        }
    }
}

impl ExperimentConfig {
    /// Parses `key = value` lines. `#` starts a comment, blank lines are
    /// skipped, keys may appear once each.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            if seen.iter().any(|k| k == key) {
                return Err(format!("line {}: duplicate key {key}", lineno + 1));
            }
            seen.push(key.to_string());
            cfg.set(key, value)
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies a single override; shared by the file parser and the CLI
    /// flag layer so both spell keys identically.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
            value
                .parse::<T>()
                .map_err(|_| format!("bad value {value:?} for {key}"))
        }
        match key {
            "experiment" => self.experiment = value.to_string(),
            "n" => self.n = num(key, value)?,
            "n_list" => {
                let parsed: Result<Vec<usize>, String> = value
                    .split(',')
                    .map(|s| num::<usize>(key, s.trim()))
                    .collect();
                self.n_list = parsed?;
            }
            "gamma" => self.gamma = num(key, value)?,
            "gamma_tilde" => self.gamma_tilde = num(key, value)?,
            "t_minus" => self.t_minus = num(key, value)?,
            "t_plus" => self.t_plus = num(key, value)?,
            "tau_plus" => self.tau_plus = num(key, value)?,
            "preset" => self.preset = value.to_string(),
            "dtau" => self.dtau = num(key, value)?,
            "t_end" => self.t_end = num(key, value)?,
            "record_stride" => self.record_stride = num(key, value)?,
            "grid_m" => self.grid_m = num(key, value)?,
            "grid_dt" => self.grid_dt = num(key, value)?,
            "trajectories" => self.trajectories = num(key, value)?,
            "master_seed" => self.master_seed = num(key, value)?,
            "output_dir" => self.output_dir = Some(value.to_string()),
            other => return Err(format!("unknown key {other}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.n_list.len() < 2 {
            return Err("n_list needs at least two sizes".to_string());
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return Err("n_list must be strictly increasing".to_string());
        }
        match self.preset.as_str() {
            "equilibrium" | "linear-beta" => {}
            other => return Err(format!("unknown preset {other}")),
        }
        self.params()?;
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams, String> {
        self.params_for(self.n)
    }

    pub fn params_for(&self, n: usize) -> Result<ModelParams, String> {
        ModelParams::new(
            n,
            self.gamma,
            self.gamma_tilde,
            self.t_minus,
            self.t_plus,
            self.tau_plus,
        )
    }

    pub fn gibbs(&self) -> Result<GibbsSpec, String> {
        match self.preset.as_str() {
            "equilibrium" => Ok(GibbsSpec::equilibrium(self.t_minus, self.tau_plus)),
            "linear-beta" => Ok(GibbsSpec::linear_beta(
                self.t_minus,
                self.t_plus,
                self.tau_plus,
            )),
            other => Err(format!("unknown preset {other}")),
        }
    }

    pub fn integrator(&self) -> Result<IntegratorConfig, String> {
        IntegratorConfig::new(self.dtau, self.t_end, self.record_stride)
    }

    /// Canonical listing: every key in fixed order, one per line. This is
    /// what gets hashed, so two configs agree iff their listings agree.
    pub fn canonical(&self) -> String {
        let n_list = self
            .n_list
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mut out = String::new();
        let pairs: Vec<(&str, String)> = vec![
            ("experiment", self.experiment.clone()),
            ("n", self.n.to_string()),
            ("n_list", n_list),
            ("gamma", format!("{:e}", self.gamma)),
            ("gamma_tilde", format!("{:e}", self.gamma_tilde)),
            ("t_minus", format!("{:e}", self.t_minus)),
            ("t_plus", format!("{:e}", self.t_plus)),
            ("tau_plus", format!("{:e}", self.tau_plus)),
            ("preset", self.preset.clone()),
            ("dtau", format!("{:e}", self.dtau)),
            ("t_end", format!("{:e}", self.t_end)),
            ("record_stride", self.record_stride.to_string()),
            ("grid_m", self.grid_m.to_string()),
            ("grid_dt", format!("{:e}", self.grid_dt)),
            ("trajectories", self.trajectories.to_string()),
            ("master_seed", self.master_seed.to_string()),
        ];
        for (k, v) in pairs {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    /// FNV-1a over the canonical listing, rendered as 16 hex digits.
    pub fn hash(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in self.canonical().bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}
