//! Finite-difference solver for the quasi-incompressible
//! Navier-Stokes-Cahn-Hilliard system on a MAC staggered grid.
//!
//! The crate is organised bottom-up: [`grid`] (storage and operators),
//! [`physics`] (constitutive relations), [`scheme`] (discrete residuals),
//! [`multigrid`] (FAS solver), [`diagnostics`] and [`bench`] (scenarios,
//! time loop, output and the convergence harness).

pub mod bench;
pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod multigrid;
pub mod physics;
pub mod scheme;

pub use error::{Error, Result};
