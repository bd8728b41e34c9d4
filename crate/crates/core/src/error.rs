use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Lorentz index {0} out of range (expected 0..=3)")]
    IndexOutOfRange(usize),

    #[error("spatial axis {0} out of range (expected 1..=3)")]
    AxisOutOfRange(usize),

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("scalar potential A0 is nonzero ({0:e}) where a purely magnetic field is required")]
    NonzeroScalarPotential(f64),

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e} in {quantity}")]
    ImaginaryResidue {
        quantity: &'static str,
        residue: f64,
        tolerance: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
