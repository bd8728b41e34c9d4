//! First-order magnetic shifts of the spin and orbital angular momentum of a
//! free Dirac electron, by lattice quadrature and in closed form.

pub mod commands;
pub mod config;
pub mod error;
pub mod fields;
pub mod gamma;
pub mod lattice;
pub mod observables;
pub mod perturbation;
pub mod spinor;
pub mod units;

pub use error::{Error, Result};
