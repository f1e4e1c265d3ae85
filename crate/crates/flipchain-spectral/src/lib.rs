//! Frequency-domain analysis of the averaged chain dynamics.
//!
//! The mean stretch and momentum fields close into a linear system whose
//! lattice Fourier modes decouple. This crate carries the per-mode
//! dispersion relation, the boundary response functions built from
//! averaged sums over the frequency lattice, a closed form for one of them
//! via the inverse Joukowski map, decay kernels for the energy transport
//! estimates, a certification harness that fits constants in the claimed
//! envelope bounds, and a Laplace-inversion cross-check of the boundary
//! momentum signals against direct moment integration.

mod certify;
mod closed;
mod dispersion;
mod functions;
mod kernels;
mod laplace;

pub use certify::{certify_bounds, BoundCertification, BoundRow};
pub use closed::{inverse_joukowski, tension_sum_closed_form};
pub use dispersion::{char_poly, dispersion, DispersionPoint};
pub use functions::{
    averaged_sum, e_diff_at, e_sum_at, eval_functions, log_eta_grid, mode_denominator,
    SpectralEval,
};
pub use kernels::{decay_kernel, decay_kernel_fit};
pub use laplace::{
    boundary_laplace_crosscheck, boundary_transforms, invert_boundary_signals,
    time_domain_boundary_signals, two_phase_tension_transform, BoundarySignals,
    CrosscheckReport,
};
