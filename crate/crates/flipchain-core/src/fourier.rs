//! Discrete Fourier transform on the n+1 sites, with the normalization used
//! throughout this workspace: forward sums are unnormalized, inverse sums
//! carry the 1/(n+1) average. Frequencies live on {j/(n+1) : j = 0..n}.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// f_hat(k_j) = sum_x f_x exp(-2 pi i x j / m), m = input length.
pub fn dft_forward(f: &[Complex64]) -> Vec<Complex64> {
    let mut buf = f.to_vec();
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_forward(buf.len());
        fft.process(&mut buf);
    });
    buf
}

pub fn dft_forward_real(f: &[f64]) -> Vec<Complex64> {
    let cplx: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft_forward(&cplx)
}

/// f_x = (1/m) sum_j f_hat(k_j) exp(+2 pi i x j / m).
pub fn dft_inverse(fh: &[Complex64]) -> Vec<Complex64> {
    let m = fh.len();
    let mut buf = fh.to_vec();
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(buf.len());
        fft.process(&mut buf);
    });
    let scale = 1.0 / m as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// The frequency grid {j/m : j = 0..m-1} as floats.
pub fn freq_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| j as f64 / m as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_signal(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
        (0..m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn delta_transforms_to_constant() {
        let m = 8;
        let mut f = vec![Complex64::new(0.0, 0.0); m];
        f[0] = Complex64::new(1.0, 0.0);
        let fh = dft_forward(&f);
        for v in fh {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn single_mode_forward() {
        // f_x = exp(+2 pi i x j0/m) transforms to m * delta_{j,j0}.
        let m = 12;
        let j0 = 5;
        let f: Vec<Complex64> = (0..m)
            .map(|x| {
                let ph = 2.0 * std::f64::consts::PI * (x * j0) as f64 / m as f64;
                Complex64::new(ph.cos(), ph.sin())
            })
            .collect();
        let fh = dft_forward(&f);
        for (j, v) in fh.iter().enumerate() {
            let expect = if j == j0 { m as f64 } else { 0.0 };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-11, "mode {j}");
        }
    }

    #[test]
    fn inverse_undoes_forward_all_sizes() {
        // Every length up to 1025 covers the odd sizes n+1 used by the chain.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=1025 {
            let f = rand_signal(&mut rng, m);
            let back = dft_inverse(&dft_forward(&f));
            let err: f64 = f
                .iter()
                .zip(back.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "round trip failed at m={m}: {err}");
        }
    }

    #[test]
    fn parseval_with_average_normalization() {
        // (1/m) sum_k fh gh* = sum_x f g*.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [1usize, 2, 5, 17, 64, 257, 1025] {
            let f = rand_signal(&mut rng, m);
            let g = rand_signal(&mut rng, m);
            let fh = dft_forward(&f);
            let gh = dft_forward(&g);
            let lhs: Complex64 =
                fh.iter().zip(gh.iter()).map(|(a, b)| a * b.conj()).sum::<Complex64>()
                    / m as f64;
            let rhs: Complex64 = f.iter().zip(g.iter()).map(|(a, b)| a * b.conj()).sum();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()), "m={m}");
        }
    }
}
