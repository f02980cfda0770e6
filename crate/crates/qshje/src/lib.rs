//! Numerical laboratory for the stationary quantum Hamilton-Jacobi
//! equation in one dimension.
//!
//! The crate builds the closed-form reduced action S0 and amplitude A of a
//! 1D stationary quantum system on top of a canonical two-solution basis of
//! the Schrodinger equation, exposes the algebra between Schrodinger
//! coefficients and the two-term (counter-propagating) decomposition of the
//! wave function, computes Floyd/Bohm/hydrodynamic trajectory fields with
//! Jacobi time parameterization, and verifies the 3D continuity identities
//! carried by the hidden antisymmetric two-tensor. Bound states expose a
//! one-parameter family of reduced actions (the hidden variable nu) that
//! the wave function itself cannot distinguish; unbound states do not.
//!
//! Modules follow that structure: [`schrodinger`] (basis, Wronskian,
//! eigenvalues), [`reduced_action`] (S0, A, quantum potential, residuals),
//! [`microstates`] (coefficient algebra, gauge transformations, currents),
//! [`trajectories`] (times and velocities), [`field3d`] (3D identities),
//! with [`config`]/[`output`]/[`verify`] backing the command-line front end.

pub mod config;
pub mod error;
pub mod field3d;
pub mod grid;
pub mod microstate;
pub mod microstates;
pub mod numerics;
pub mod output;
pub mod potential;
pub mod reduced_action;
pub mod schrodinger;
pub mod trajectories;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Constants, Grid};
pub use microstate::{Microstate, WaveDirection};
pub use potential::Potential;
