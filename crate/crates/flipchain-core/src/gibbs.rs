//! Product Gaussian measures on the chain and their free-energy function.

use crate::params::ModelParams;
use crate::state::ChainState;
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Free energy of the single-site marginal: G(beta, tau) =
/// beta tau^2 / 2 + log(2 pi / beta) / 2.
pub fn gibbs_potential(beta: f64, tau: f64) -> f64 {
    assert!(beta > 0.0, "inverse temperature must be positive");
    0.5 * beta * tau * tau + 0.5 * ((2.0 * std::f64::consts::PI) / beta).ln()
}

type Profile = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Site-inhomogeneous product Gaussian on (r, p).
///
/// At site x the profile functions are evaluated at u = x/n. Stretch r_x is
/// drawn from N(tension + mean_r(u), 1/beta(u)) and momentum p_x from
/// N(mean_p(u), 1/beta(u)); r_0 is structural and never sampled.
pub struct GibbsSpec {
    pub beta: Profile,
    pub tension: f64,
    pub mean_r: Option<Profile>,
    pub mean_p: Option<Profile>,
}

impl GibbsSpec {
    /// Homogeneous equilibrium at temperature t with tension tau.
    pub fn equilibrium(t: f64, tau: f64) -> Self {
        assert!(t > 0.0, "temperature must be positive");
        GibbsSpec {
            beta: Box::new(move |_| 1.0 / t),
            tension: tau,
            mean_r: None,
            mean_p: None,
        }
    }

    /// Linear interpolation of the inverse temperature between the two
    /// boundary values, constant tension.
    pub fn linear_beta(t_minus: f64, t_plus: f64, tau: f64) -> Self {
        assert!(t_minus > 0.0 && t_plus > 0.0, "temperatures must be positive");
        let (b0, b1) = (1.0 / t_minus, 1.0 / t_plus);
        GibbsSpec {
            beta: Box::new(move |u| b0 + (b1 - b0) * u),
            tension: tau,
            mean_r: None,
            mean_p: None,
        }
    }

    pub fn beta_at(&self, u: f64) -> f64 {
        let b = (self.beta)(u);
        assert!(b > 0.0, "beta profile must stay positive, got {b} at u={u}");
        b
    }

    pub fn mean_r_at(&self, u: f64) -> f64 {
        self.tension + self.mean_r.as_ref().map_or(0.0, |f| f(u))
    }

    pub fn mean_p_at(&self, u: f64) -> f64 {
        self.mean_p.as_ref().map_or(0.0, |f| f(u))
    }
}

/// Draw one configuration from `spec` for a chain with parameters `params`.
pub fn sample_initial<R: Rng + ?Sized>(
    params: &ModelParams,
    spec: &GibbsSpec,
    rng: &mut R,
) -> ChainState {
    let n = params.n;
    let nf = n as f64;
    let mut r = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let u = x as f64 / nf;
        let sd = spec.beta_at(u).recip().sqrt();
        if x >= 1 {
            let dist = Normal::new(spec.mean_r_at(u), sd).expect("valid normal");
            r.push(dist.sample(rng));
        }
        let dist = Normal::new(spec.mean_p_at(u), sd).expect("valid normal");
        p.push(dist.sample(rng));
    }
    ChainState::new(r, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn potential_reference_values() {
        // Frozen against direct evaluation of the closed form.
        assert_abs_diff_eq!(
            gibbs_potential(2.0 * std::f64::consts::PI, 0.0),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(gibbs_potential(1.0, 0.0), 0.9189385332046727, epsilon = 1e-15);
        assert_abs_diff_eq!(
            gibbs_potential(1.0, 2.0),
            2.0 + 0.5 * (2.0 * std::f64::consts::PI).ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn potential_matches_quadrature() {
        // G is the log of the partition integral: exp(G(beta,tau)) must equal
        // int exp(-beta(r^2/2 - tau r)) dr. Simpson quadrature over
        // r in [-40, 40], fine enough for 1e-10.
        let quad = |beta: f64, tau: f64| -> f64 {
            let (a, b, m) = (-40.0_f64, 40.0_f64, 160_000usize);
            let h = (b - a) / m as f64;
            let f = |r: f64| (-beta * (0.5 * r * r - tau * r)).exp();
            let mut s = f(a) + f(b);
            for i in 1..m {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * f(a + i as f64 * h);
            }
            s * h / 3.0
        };
        for &(beta, tau) in &[(1.0, 0.0), (0.5, 1.0), (2.0, -0.7), (1.0, 2.0)] {
            let g = gibbs_potential(beta, tau);
            let z = quad(beta, tau);
            assert_abs_diff_eq!(g.exp(), z, epsilon = 1e-9 * z);
        }
    }

    #[test]
    fn equilibrium_sample_shapes() {
        let params = ModelParams::new(12, 1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        let spec = GibbsSpec::equilibrium(1.0, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = sample_initial(&params, &spec, &mut rng);
        assert_eq!(s.r.len(), 12);
        assert_eq!(s.p.len(), 13);
        assert!(s.is_finite());
    }

    #[test]
    fn sample_moments_match_profiles() {
        // Chain of length n=4 with a linear beta profile; check the per-site
        // empirical mean and variance of a large sample against the spec.
        let params = ModelParams::new(4, 1.0, 1.0, 2.0, 0.5, 1.0).unwrap();
        let spec = GibbsSpec::linear_beta(2.0, 0.5, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let m = 200_000usize;
        let n = params.n;
        let mut sum_r = vec![0.0; n];
        let mut sum_r2 = vec![0.0; n];
        let mut sum_p = vec![0.0; n + 1];
        let mut sum_p2 = vec![0.0; n + 1];
        for _ in 0..m {
            let s = sample_initial(&params, &spec, &mut rng);
            for x in 1..=n {
                sum_r[x - 1] += s.r[x - 1];
                sum_r2[x - 1] += s.r[x - 1] * s.r[x - 1];
            }
            for x in 0..=n {
                sum_p[x] += s.p[x];
                sum_p2[x] += s.p[x] * s.p[x];
            }
        }
        let mf = m as f64;
        for x in 0..=n {
            let u = x as f64 / n as f64;
            let var = spec.beta_at(u).recip();
            let tol = 5.0 * (var / mf).sqrt().max(var * (2.0 / mf).sqrt());
            if x >= 1 {
                let mean_r = sum_r[x - 1] / mf;
                let var_r = sum_r2[x - 1] / mf - mean_r * mean_r;
                assert_abs_diff_eq!(mean_r, spec.mean_r_at(u), epsilon = tol);
                assert_abs_diff_eq!(var_r, var, epsilon = 3.0 * tol);
            }
            let mean_p = sum_p[x] / mf;
            let var_p = sum_p2[x] / mf - mean_p * mean_p;
            assert_abs_diff_eq!(mean_p, 0.0, epsilon = tol);
            assert_abs_diff_eq!(var_p, var, epsilon = 3.0 * tol);
        }
    }
}
