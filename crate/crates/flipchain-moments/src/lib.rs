//! Exact first- and second-moment evolution of the chain.
//!
//! The generator maps polynomials of degree <= 2 to polynomials of degree
//! <= 2, so means m = E[z] and second moments M = E[z z^T] close into a
//! linear ODE system. Evolving (m, M) deterministically gives a noise-free
//! oracle for Monte Carlo runs and a fast engine for limit studies:
//!
//!   dm/dtau = (A0 + Df) m + b
//!   dM/dtau = A0 M + M A0^T + b m^T + m b^T + flip(M) + Q
//!
//! in microscopic time, where A0 carries the Hamiltonian couplings plus the
//! boundary friction, Df the flip damping on means, flip(M) the entrywise
//! flip decay of mixed second moments, b the tension forcing, and Q the
//! thermostat diffusion.

pub mod drift;
pub mod evolve;
pub mod types;

pub use drift::{build_drift, flip_term, DriftSpec};
pub use evolve::{
    energy_profile, evolve, evolve_means, evolve_means_with, evolve_with, fluctuation_cov,
    stationary_mean,
};
pub use types::MomentState;
