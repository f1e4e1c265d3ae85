//! Reference solvers for the macroscopic limit equations of the flip chain:
//! a heat equation for the stretch profile and an inhomogeneous heat
//! equation for the energy profile, both on [0, 1] with Dirichlet data tied
//! to the chain's thermostats and tension.
//!
//! The solvers use the trapezoid (Crank-Nicolson) scheme with Thomas-style
//! tridiagonal solves: unconditionally stable, second order in space and
//! time, and cheap enough that grid-refinement studies run in tests. Weak
//! formulations against test profiles vanishing at the ends are available as
//! residual checks on any computed path.

pub mod field;
pub mod grid;
pub mod solve;
pub mod weak;

pub use field::{
    preset_profile, read_profile_csv, write_fields_csv, FieldKind, MacroField,
};
pub use grid::Grid1D;
pub use solve::{solve_energy, solve_stretch, stationary_energy_profile};
pub use weak::{weak_residual_energy, weak_residual_stretch, TestFunction};
