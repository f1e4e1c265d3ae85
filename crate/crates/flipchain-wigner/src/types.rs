//! Carriers for the wave-function spectra and the test functions paired
//! against them.

use num_complex::Complex64;
use std::io::Write;

/// The four quadratic spectra of the fluctuation wave variable at one time,
/// indexed by an integer mode offset eta and a mode k, both on 0..=n and
/// wrapped mod n+1.
///
/// The minus fields are derived from the plus fields by conjugate symmetry,
/// wminus(eta, k) = conj(wplus(-eta, -k)) and likewise for y, never
/// recomputed from the covariance.
#[derive(Debug, Clone)]
pub struct WignerSet {
    pub n: usize,
    pub t: f64,
    pub(crate) wplus: Vec<Complex64>,
    pub(crate) wminus: Vec<Complex64>,
    pub(crate) yplus: Vec<Complex64>,
    pub(crate) yminus: Vec<Complex64>,
}

impl WignerSet {
    /// Number of modes, n+1.
    pub fn modes(&self) -> usize {
        self.n + 1
    }

    fn wrap(&self, i: i64) -> usize {
        i.rem_euclid((self.n + 1) as i64) as usize
    }

    fn at(&self, field: &[Complex64], eta: i64, k: i64) -> Complex64 {
        field[self.wrap(eta) * (self.n + 1) + self.wrap(k)]
    }

    pub fn wplus(&self, eta: i64, k: i64) -> Complex64 {
        self.at(&self.wplus, eta, k)
    }

    pub fn wminus(&self, eta: i64, k: i64) -> Complex64 {
        self.at(&self.wminus, eta, k)
    }

    pub fn yplus(&self, eta: i64, k: i64) -> Complex64 {
        self.at(&self.yplus, eta, k)
    }

    pub fn yminus(&self, eta: i64, k: i64) -> Complex64 {
        self.at(&self.yminus, eta, k)
    }
}

/// Writes a spectrum set as rows of (eta, k, Re/Im of each field).
pub fn write_wigner_csv<W: Write>(ws: &WignerSet, out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "eta,k,re_wplus,im_wplus,re_wminus,im_wminus,re_yplus,im_yplus,re_yminus,im_yminus"
    )?;
    let m = ws.modes();
    for eta in 0..m {
        for k in 0..m {
            let i = eta * m + k;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                eta,
                k,
                ws.wplus[i].re,
                ws.wplus[i].im,
                ws.wminus[i].re,
                ws.wminus[i].im,
                ws.yplus[i].re,
                ws.yplus[i].im,
                ws.yminus[i].re,
                ws.yminus[i].im
            )?;
        }
    }
    Ok(())
}

/// Separable test function G(s, u) = a(s) b(u) with b(0) = b(1) = 0, paired
/// against site profiles through u = x/n.
#[derive(Clone, Copy)]
pub struct TestFunction2D {
    pub name: &'static str,
    time: fn(f64) -> f64,
    space: fn(f64) -> f64,
}

impl TestFunction2D {
    /// G(s, u) = sin(pi u), constant over the time window.
    pub fn sine() -> Self {
        TestFunction2D {
            name: "sine",
            time: |_| 1.0,
            space: |u| (std::f64::consts::PI * u).sin(),
        }
    }

    /// G(s, u) = u (1 - u), constant over the time window.
    pub fn bump() -> Self {
        TestFunction2D {
            name: "bump",
            time: |_| 1.0,
            space: |u| u * (1.0 - u),
        }
    }

    /// G(s, u) = s sin(pi u), weighting late times more.
    pub fn ramped_sine() -> Self {
        TestFunction2D {
            name: "ramped-sine",
            time: |s| s,
            space: |u| (std::f64::consts::PI * u).sin(),
        }
    }

    pub fn eval(&self, s: f64, u: f64) -> f64 {
        (self.time)(s) * (self.space)(u)
    }

    /// Site values G(s, x/n) for x = 0..=n.
    pub fn site_values(&self, s: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|x| self.eval(s, x as f64 / n as f64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_vanish_at_the_ends() {
        for g in [
            TestFunction2D::sine(),
            TestFunction2D::bump(),
            TestFunction2D::ramped_sine(),
        ] {
            for &s in &[0.0, 0.3, 1.7] {
                assert!(g.eval(s, 0.0).abs() < 1e-14, "{} at u=0", g.name);
                assert!(g.eval(s, 1.0).abs() < 1e-14, "{} at u=1", g.name);
            }
        }
    }

    #[test]
    fn site_values_follow_the_macroscopic_embedding() {
        let g = TestFunction2D::bump();
        let vals = g.site_values(0.0, 4);
        assert_eq!(vals.len(), 5);
        assert_eq!(vals[0], 0.0);
        assert_eq!(vals[4], 0.0);
        assert!((vals[1] - 0.25 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn ramped_preset_scales_with_time() {
        let g = TestFunction2D::ramped_sine();
        assert_eq!(g.eval(0.0, 0.5), 0.0);
        assert!((g.eval(2.0, 0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn indexing_wraps_modulo_the_lattice() {
        let m = 4usize;
        let mut ws = WignerSet {
            n: 3,
            t: 0.0,
            wplus: vec![Complex64::new(0.0, 0.0); m * m],
            wminus: vec![Complex64::new(0.0, 0.0); m * m],
            yplus: vec![Complex64::new(0.0, 0.0); m * m],
            yminus: vec![Complex64::new(0.0, 0.0); m * m],
        };
        ws.wplus[1 * m + 2] = Complex64::new(7.0, 0.0);
        assert_eq!(ws.wplus(1, 2).re, 7.0);
        assert_eq!(ws.wplus(-3, -2).re, 7.0);
        assert_eq!(ws.wplus(5, 6).re, 7.0);
    }

    #[test]
    fn csv_lists_every_mode_pair() {
        let m = 4usize;
        let ws = WignerSet {
            n: 3,
            t: 0.5,
            wplus: vec![Complex64::new(1.0, -1.0); m * m],
            wminus: vec![Complex64::new(0.0, 0.0); m * m],
            yplus: vec![Complex64::new(0.0, 0.0); m * m],
            yminus: vec![Complex64::new(0.0, 0.0); m * m],
        };
        let mut out = Vec::new();
        write_wigner_csv(&ws, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert!(text.lines().nth(1).unwrap().starts_with("0,0,1,-1,"));
    }
}
