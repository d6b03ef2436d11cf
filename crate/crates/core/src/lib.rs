//! Jaynes–Cummings dynamics of a moving two-level atom coupled to a single
//! cavity mode while falling through a homogeneous gravitational field.
//!
//! Two independent routes produce the branch amplitudes `Cₙ(p)` (atom
//! excited) and `Dₙ(p)` (atom in the ground state):
//!
//! - [`analytic`]: the closed-form su(2) solution built from the chirped
//!   phase integrals `E±` and the coefficients `aₙ`, `bₙ`;
//! - [`ode`]: direct, time-ordered integration of each two-level block of the
//!   effective Hamiltonian with an adaptive Dormand–Prince pair.
//!
//! Everything downstream ([`observables`]) consumes a [`BranchState`] and is
//! agnostic to which backend produced it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod field;
pub mod grid;
pub mod observables;
pub mod ode;
pub mod params;
pub mod quadrature;
pub mod scenario;
pub mod special;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use field::{coherent_amplitudes, truncation_for, CoherentField};
pub use grid::{build_momentum_grid, MomentumGrid};
pub use params::PhysicalParams;
pub use state::BranchState;

pub use num_complex::Complex64 as C64;
