//! Spectral diagnostics of the chain's fluctuations: wave-function second
//! moments over mode pairs, the quadratic spectral energy and its balance
//! law along exact-moments paths, and the time-integrated equipartition
//! defect in both lattice and spectral form.
//!
//! Everything here is computed from covariance matrices, never from single
//! trajectories, so the diagnostics carry no sampling noise.

pub mod balance;
pub mod equip;
pub mod transform;
pub mod types;

pub use balance::{balance_terms, etilde, wigner_balance_residual};
pub use equip::{equipartition_functional, equipartition_functional_fourier, CovSample};
pub use transform::{dissipation_sum, energy_functional, wigner_from_cov};
pub use types::{write_wigner_csv, TestFunction2D, WignerSet};
