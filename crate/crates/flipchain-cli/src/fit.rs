//! Log-log power-law fits for scaling sweeps.

/// Least-squares line through (log x, log y). `slope` is the fitted
/// exponent; `residual` is the rms deviation of log y around the line,
/// so a clean power law gives a residual near zero regardless of scale.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

impl ScalingFit {
    pub fn log_log(xs: &[f64], ys: &[f64]) -> Result<Self, String> {
        if xs.len() != ys.len() {
            return Err("xs and ys must have equal length".to_string());
        }
        if xs.len() < 3 {
            return Err("a slope from fewer than 3 points is not evidence".to_string());
        }
        if xs.iter().chain(ys.iter()).any(|&v| !(v > 0.0)) {
            return Err("log-log fit needs strictly positive data".to_string());
        }
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let m = lx.len() as f64;
        let mx = lx.iter().sum::<f64>() / m;
        let my = ly.iter().sum::<f64>() / m;
        let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = lx
            .iter()
            .zip(&ly)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum();
        if sxx == 0.0 {
            return Err("all x values coincide".to_string());
        }
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let residual = (lx
            .iter()
            .zip(&ly)
            .map(|(x, y)| {
                let r = y - (intercept + slope * x);
                r * r
            })
            .sum::<f64>()
            / m)
            .sqrt();
        Ok(ScalingFit {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            slope,
            intercept,
            residual,
        })
    }
}
