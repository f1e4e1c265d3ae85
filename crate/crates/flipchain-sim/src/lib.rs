//! Stochastic integrator for the flip chain.
//!
//! Time is stepped on the microscopic scale with a Strang splitting whose two
//! stochastic sub-steps (boundary Ornstein-Uhlenbeck, momentum sign flips)
//! are sampled exactly in law; only the Hamiltonian sub-step carries a weak
//! O(dtau^2) error. Ensembles of trajectories reduce through a fixed binary
//! tree, so results are bitwise independent of the worker count.

pub mod config;
pub mod ensemble;
pub mod step;
pub mod trajectory;

pub use config::IntegratorConfig;
pub use ensemble::{embed_profile, run_ensemble, trajectory_rng, BoundaryStats, EnsembleStats};
pub use step::{flip_probability, flip_step, ou_half_step, step, verlet_step};
pub use trajectory::{run_trajectory, BoundaryIntegrals, TrajectoryRecord};
