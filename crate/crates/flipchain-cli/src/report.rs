//! Experiment outputs: a CSV table plus a JSON summary.
//!
//! The summary embeds the config hash and master seed, so any result file
//! can be traced back to the exact configuration and randomness that
//! produced it, and two runs with the same pair must agree bit for bit.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone)]
pub struct Metric {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub experiment: String,
    pub config_hash: String,
    pub master_seed: u64,
    /// Echo of the physical parameters the run actually used.
    pub params: Vec<(String, String)>,
    pub metrics: Vec<Metric>,
    pub checks: Vec<Check>,
    /// Raw table; first line is the header.
    pub csv: String,
}

impl Report {
    pub fn new(cfg: &ExperimentConfig, experiment: &str) -> Self {
        let params = vec![
            ("gamma".to_string(), format!("{}", cfg.gamma)),
            ("gamma_tilde".to_string(), format!("{}", cfg.gamma_tilde)),
            ("t_minus".to_string(), format!("{}", cfg.t_minus)),
            ("t_plus".to_string(), format!("{}", cfg.t_plus)),
            ("tau_plus".to_string(), format!("{}", cfg.tau_plus)),
        ];
        Report {
            experiment: experiment.to_string(),
            config_hash: cfg.hash(),
            master_seed: cfg.master_seed,
            params,
            metrics: Vec::new(),
            checks: Vec::new(),
            csv: String::new(),
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.push(Metric {
            name: name.to_string(),
            value,
        });
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn summary_json(&self) -> String {
        let params: serde_json::Map<String, serde_json::Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let metrics: Vec<serde_json::Value> = self
            .metrics
            .iter()
            .map(|m| serde_json::json!({ "name": m.name, "value": m.value }))
            .collect();
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| serde_json::json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect();
        let doc = serde_json::json!({
            "experiment": self.experiment,
            "config_hash": self.config_hash,
            "master_seed": self.master_seed,
            "params": params,
            "metrics": metrics,
            "checks": checks,
            "pass": self.passed(),
        });
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Writes `<experiment>.csv` and `<experiment>.json` under `dir`.
    pub fn write_outputs(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let stem = self.experiment.replace([' ', '/'], "-");
        let csv_path = dir.join(format!("{stem}.csv"));
        let json_path = dir.join(format!("{stem}.json"));
        fs::write(&csv_path, &self.csv)?;
        fs::write(&json_path, self.summary_json())?;
        Ok(vec![csv_path, json_path])
    }

    /// One block per run on stdout: metrics, then checks with PASS/FAIL.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "== {} (config {}, seed {})\n",
            self.experiment, self.config_hash, self.master_seed
        ));
        for m in &self.metrics {
            out.push_str(&format!("   {:<38} {:+.6e}\n", m.name, m.value));
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("   [{tag}] {:<30} {}\n", c.name, c.detail));
        }
        out
    }
}

/// Builds a CSV body from a header and rows of already-formatted fields.
pub fn csv_table(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::with_capacity(rows.len() * 32 + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
