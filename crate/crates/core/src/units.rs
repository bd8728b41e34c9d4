//! Natural units (ħ = c = 1, energies in eV) and the electric-charge convention.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// CODATA 2018 values.
pub mod constants {
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light, m/s.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Elementary charge, C (also J per eV).
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
    /// Electron rest energy, eV.
    pub const ELECTRON_MASS_EV: f64 = 0.510_998_950_00e6;
}

/// Value of |e| used in every shift formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChargeConvention {
    /// Heaviside–Lorentz: |e| = sqrt(4πα) ≈ 0.30282.
    Physical,
    /// |e| = 1.
    Unit,
}

impl ChargeConvention {
    pub const ALL: [ChargeConvention; 2] = [ChargeConvention::Physical, ChargeConvention::Unit];

    pub fn charge(self) -> f64 {
        match self {
            ChargeConvention::Physical => (4.0 * PI * constants::FINE_STRUCTURE).sqrt(),
            ChargeConvention::Unit => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChargeConvention::Physical => "physical",
            ChargeConvention::Unit => "unit",
        }
    }
}

impl fmt::Display for ChargeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChargeConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "physical" => Ok(ChargeConvention::Physical),
            "unit" => Ok(ChargeConvention::Unit),
            other => Err(Error::InvalidParameter(format!(
                "charge convention must be `physical` or `unit`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsContext {
    convention: ChargeConvention,
    tesla_to_ev2: f64,
    meter_to_inverse_ev: f64,
    electron_mass: f64,
}

impl UnitsContext {
    pub fn new(convention: ChargeConvention) -> Self {
        use constants::*;
        let physical_charge = ChargeConvention::Physical.charge();
        Self {
            convention,
            // eB [eV²] = B ħ c² / e_SI, then divide by the dimensionless charge.
            tesla_to_ev2: HBAR * SPEED_OF_LIGHT * SPEED_OF_LIGHT
                / (ELEMENTARY_CHARGE * physical_charge),
            meter_to_inverse_ev: ELEMENTARY_CHARGE / (HBAR * SPEED_OF_LIGHT),
            electron_mass: ELECTRON_MASS_EV,
        }
    }

    /// Same constants, different |e|.
    pub fn with_convention(&self, convention: ChargeConvention) -> Self {
        Self { convention, ..*self }
    }

    pub fn convention(&self) -> ChargeConvention {
        self.convention
    }

    /// |e| under the active convention.
    pub fn charge(&self) -> f64 {
        self.convention.charge()
    }

    pub fn electron_mass(&self) -> f64 {
        self.electron_mass
    }

    /// |e| / m_e, the prefactor of the first-order spinor shift.
    pub fn coupling(&self) -> f64 {
        self.charge() / self.electron_mass
    }

    pub fn tesla_to_ev2(&self) -> f64 {
        self.tesla_to_ev2
    }

    pub fn meter_to_inverse_ev(&self) -> f64 {
        self.meter_to_inverse_ev
    }

    pub fn tesla_to_natural(&self, tesla: f64) -> f64 {
        tesla * self.tesla_to_ev2
    }

    pub fn natural_to_tesla(&self, ev2: f64) -> f64 {
        ev2 / self.tesla_to_ev2
    }

    pub fn meter_to_natural(&self, meters: f64) -> f64 {
        meters * self.meter_to_inverse_ev
    }

    pub fn natural_to_meter(&self, inverse_ev: f64) -> f64 {
        inverse_ev / self.meter_to_inverse_ev
    }
}

impl Default for UnitsContext {
    fn default() -> Self {
        Self::new(ChargeConvention::Physical)
    }
}

/// Size of the apparatus generating the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApparatusConfig {
    meters: f64,
    natural: f64,
}

impl ApparatusConfig {
    pub fn new(meters: f64, units: &UnitsContext) -> Result<Self> {
        if !(meters.is_finite() && meters > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "apparatus scale must be positive, got {meters}"
            )));
        }
        Ok(Self {
            meters,
            natural: units.meter_to_natural(meters),
        })
    }

    pub fn meters(&self) -> f64 {
        self.meters
    }

    /// Scale in eV⁻¹.
    pub fn natural(&self) -> f64 {
        self.natural
    }
}
