//! From a fluctuation covariance to the wave-function spectra.
//!
//! The fluctuations are folded into the complex wave variable
//! psi_x = rt_x + i pt_x with rt_0 = 0, and the two site-space kernels
//!
//!   K_xy = E[psi_x conj(psi_y)] = Crr + Cpp + i (Cpr - Crp),
//!   J_xy = E[psi_x psi_y]       = Crr - Cpp + i (Cpr + Crp),
//!
//! are transformed once each: (F M F^H)[k', k] = sum_{x,y} M_xy
//! e^{-2 pi i k' x / (n+1)} e^{+2 pi i k y / (n+1)}. The spectra read the
//! shifted diagonals, W+(eta, k) = (F K F^H)[k+eta, k] / (2(n+1)) and
//! Y+(eta, k) the same with J; the minus fields follow by conjugate
//! symmetry.

use crate::types::WignerSet;
use flipchain_core::{dft_forward, dft_inverse, idx_p, idx_r, phase_dim};
use num_complex::Complex64;

/// F M F^H for an m x m complex matrix, via one forward transform per column
/// and one (rescaled) inverse transform per row.
fn sandwich(mat: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut cols = vec![Complex64::new(0.0, 0.0); m * m];
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for y in 0..m {
        for x in 0..m {
            buf[x] = mat[x * m + y];
        }
        let hat = dft_forward(&buf);
        for kp in 0..m {
            cols[kp * m + y] = hat[kp];
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); m * m];
    for kp in 0..m {
        let row = &cols[kp * m..(kp + 1) * m];
        let back = dft_inverse(row);
        for k in 0..m {
            out[kp * m + k] = back[k] * m as f64;
        }
    }
    out
}

/// Entry of the site-padded covariance blocks; r_0 rows and columns are
/// structurally zero.
struct Blocks<'a> {
    c: &'a [f64],
    n: usize,
    d: usize,
}

impl<'a> Blocks<'a> {
    fn rr(&self, x: usize, y: usize) -> f64 {
        if x == 0 || y == 0 {
            0.0
        } else {
            self.c[idx_r(self.n, x) * self.d + idx_r(self.n, y)]
        }
    }

    fn pp(&self, x: usize, y: usize) -> f64 {
        self.c[idx_p(self.n, x) * self.d + idx_p(self.n, y)]
    }

    fn pr(&self, x: usize, y: usize) -> f64 {
        if y == 0 {
            0.0
        } else {
            self.c[idx_p(self.n, x) * self.d + idx_r(self.n, y)]
        }
    }

    fn rp(&self, x: usize, y: usize) -> f64 {
        if x == 0 {
            0.0
        } else {
            self.c[idx_r(self.n, x) * self.d + idx_p(self.n, y)]
        }
    }
}

/// Builds the four spectra from a (2n+1)^2 fluctuation covariance.
pub fn wigner_from_cov(c: &[f64], n: usize, t: f64) -> WignerSet {
    let d = phase_dim(n);
    assert_eq!(c.len(), d * d, "covariance has wrong shape for n = {n}");
    let m = n + 1;
    let b = Blocks { c, n, d };
    let mut kmat = vec![Complex64::new(0.0, 0.0); m * m];
    let mut jmat = vec![Complex64::new(0.0, 0.0); m * m];
    for x in 0..m {
        for y in 0..m {
            let (rr, pp) = (b.rr(x, y), b.pp(x, y));
            let (pr, rp) = (b.pr(x, y), b.rp(x, y));
            kmat[x * m + y] = Complex64::new(rr + pp, pr - rp);
            jmat[x * m + y] = Complex64::new(rr - pp, pr + rp);
        }
    }
    let khat = sandwich(&kmat, m);
    let jhat = sandwich(&jmat, m);
    let scale = 1.0 / (2.0 * m as f64);
    let mut wplus = vec![Complex64::new(0.0, 0.0); m * m];
    let mut yplus = vec![Complex64::new(0.0, 0.0); m * m];
    for eta in 0..m {
        for k in 0..m {
            let kp = (k + eta) % m;
            wplus[eta * m + k] = khat[kp * m + k] * scale;
            yplus[eta * m + k] = jhat[kp * m + k] * scale;
        }
    }
    let reflect = |field: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for eta in 0..m {
            for k in 0..m {
                let me = (m - eta) % m;
                let mk = (m - k) % m;
                out[eta * m + k] = field[me * m + mk].conj();
            }
        }
        out
    };
    let wminus = reflect(&wplus);
    let yminus = reflect(&yplus);
    WignerSet {
        n,
        t,
        wplus,
        wminus,
        yplus,
        yminus,
    }
}

/// Quadratic spectral energy sum_eta (1/(n+1)) sum_k of the four squared
/// magnitudes. By Parseval this equals the squared Frobenius norm of the
/// fluctuation covariance divided by n+1.
pub fn energy_functional(ws: &WignerSet) -> f64 {
    let m = ws.modes() as f64;
    let sq = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    (sq(&ws.wplus) + sq(&ws.wminus) + sq(&ws.yplus) + sq(&ws.yminus)) / m
}

/// sum_eta (1/(n+1)) sum_k (|W+ - W-|^2 + |Y+ - Y-|^2), which collapses to
/// (4/(n+1)) sum_{x,x'} E[pt_x rt_x']^2.
pub fn dissipation_sum(ws: &WignerSet) -> f64 {
    let m = ws.modes() as f64;
    let diff = |a: &[Complex64], b: &[Complex64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
    };
    (diff(&ws.wplus, &ws.wminus) + diff(&ws.yplus, &ws.yminus)) / m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_of_identity_is_flat() {
        // F I F^H has (n+1) at k' = k and 0 elsewhere.
        let m = 5;
        let mut eye = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            eye[i * m + i] = Complex64::new(1.0, 0.0);
        }
        let out = sandwich(&eye, m);
        for kp in 0..m {
            for k in 0..m {
                let want = if kp == k { m as f64 } else { 0.0 };
                assert!(
                    (out[kp * m + k] - Complex64::new(want, 0.0)).norm() < 1e-10,
                    "entry ({kp}, {k})"
                );
            }
        }
    }

    #[test]
    fn sandwich_matches_direct_double_sum() {
        let m = 6;
        let mat: Vec<Complex64> = (0..m * m)
            .map(|i| Complex64::new(((i * 7 + 2) % 5) as f64 - 2.0, ((i * 3 + 1) % 4) as f64))
            .collect();
        let fast = sandwich(&mat, m);
        let tau = 2.0 * std::f64::consts::PI / m as f64;
        for kp in 0..m {
            for k in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..m {
                    for y in 0..m {
                        let ph = -tau * (kp * x) as f64 + tau * (k * y) as f64;
                        acc += mat[x * m + y] * Complex64::new(ph.cos(), ph.sin());
                    }
                }
                assert!(
                    (fast[kp * m + k] - acc).norm() < 1e-9,
                    "entry ({kp}, {k}): {} vs {acc}",
                    fast[kp * m + k]
                );
            }
        }
    }

    #[test]
    fn zero_covariance_gives_zero_fields() {
        let n = 5;
        let d = phase_dim(n);
        let ws = wigner_from_cov(&vec![0.0; d * d], n, 0.0);
        assert_eq!(energy_functional(&ws), 0.0);
        assert_eq!(dissipation_sum(&ws), 0.0);
        for v in ws.wplus.iter().chain(&ws.yplus) {
            assert_eq!(v.norm(), 0.0);
        }
    }
}
