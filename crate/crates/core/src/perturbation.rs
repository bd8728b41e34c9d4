//! First-order spinor shift induced by a classical four-potential, and the
//! dipole density `ρ_E = (i/m_e) ψ†γψ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{FieldConfiguration, FourPotential};
use crate::gamma::{GammaSet, Spinor};
use crate::lattice::LatticeBox;
use crate::spinor::SpinorField;
use crate::units::UnitsContext;

/// Largest tolerated `|Im ρ_E| / max|ρ_E|`.
pub const DENSITY_IMAG_TOLERANCE: f64 = 1e-10;

/// Shift of one spinor sample, component formulas written out in full.
pub fn delta_psi_site(a: &FourPotential, psi: &Spinor, coupling: f64) -> Spinor {
    let i = Complex64::new(0.0, 1.0);
    let [a0, a1, a2, a3] = *a;
    let [p1, p2, p3, p4] = *psi;
    [
        (p3 * a0 + p4 * a1 - i * p4 * a2 + p3 * a3) * coupling,
        (p4 * a0 + p3 * a1 + i * p3 * a2 - p4 * a3) * coupling,
        (p1 * a0 - p2 * a1 + i * p2 * a2 - p1 * a3) * coupling,
        (p2 * a0 - p1 * a1 - i * p1 * a2 + p2 * a3) * coupling,
    ]
}

/// First-order shift `Δ_A ψ` with coefficient `|e|/m_e`.
pub fn delta_psi(
    field: &FieldConfiguration,
    psi: &SpinorField,
    units: &UnitsContext,
) -> Result<SpinorField> {
    let lattice = psi.lattice();
    let values = field.values_on(lattice)?;
    let coupling = units.coupling();
    let data = psi
        .data()
        .iter()
        .zip(values.iter())
        .map(|(p, a)| delta_psi_site(a, p, coupling))
        .collect();
    SpinorField::new(*lattice, data)
}

/// [`delta_psi`] restricted to purely magnetic potentials.
pub fn magnetic_delta_psi(
    field: &FieldConfiguration,
    psi: &SpinorField,
    units: &UnitsContext,
) -> Result<SpinorField> {
    field.require_magnetic(psi.lattice())?;
    delta_psi(field, psi, units)
}

/// Real three-vector density sampled on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleDensity {
    lattice: LatticeBox,
    data: Vec<[f64; 3]>,
    imaginary_residue: f64,
}

impl DipoleDensity {
    pub fn new(lattice: LatticeBox, data: Vec<[f64; 3]>) -> Result<Self> {
        lattice.check_len(data.len(), "dipole density")?;
        Ok(Self {
            lattice,
            data,
            imaginary_residue: 0.0,
        })
    }

    /// Uniform density, handy for isolating the potential dependence.
    pub fn uniform(lattice: LatticeBox, value: [f64; 3]) -> Self {
        Self {
            data: vec![value; lattice.site_count()],
            lattice,
            imaginary_residue: 0.0,
        }
    }

    pub fn lattice(&self) -> &LatticeBox {
        &self.lattice
    }

    pub fn data(&self) -> &[[f64; 3]] {
        &self.data
    }

    /// `max |Im ρ| / max |ρ|` observed before the imaginary parts were dropped.
    pub fn imaginary_residue(&self) -> f64 {
        self.imaginary_residue
    }

    pub fn component(&self, axis: usize) -> Vec<f64> {
        self.data.iter().map(|v| v[axis]).collect()
    }
}

/// Which spinor field feeds `ρ_E` in the shift integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityOrder {
    /// Unperturbed `ψ`; the consistent first-order choice.
    #[default]
    Unperturbed,
    /// `ψ + Δψ`; mixes in higher orders, for numerical experiments only.
    Corrected,
}

/// `ρ_E = (i/m_e) ψ†γψ` at every site.
pub fn rho_e(psi: &SpinorField, gamma: &GammaSet, units: &UnitsContext) -> Result<DipoleDensity> {
    let g = gamma.matrices();
    let inv_m = units.electron_mass().recip();
    let lattice = *psi.lattice();
    let raw: Vec<[Complex64; 3]> = psi
        .data()
        .iter()
        .map(|p| [1, 2, 3].map(|a| Complex64::new(0.0, inv_m) * g[a].sandwich(p, p)))
        .collect();

    let max_re = raw.iter().flatten().map(|z| z.re.abs()).fold(0.0, f64::max);
    let max_im = raw.iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max);
    let residue = if max_re > 0.0 {
        max_im / max_re
    } else if max_im > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    if residue > DENSITY_IMAG_TOLERANCE {
        return Err(Error::ImaginaryResidue {
            quantity: "dipole density",
            residue,
            tolerance: DENSITY_IMAG_TOLERANCE,
        });
    }
    Ok(DipoleDensity {
        lattice,
        data: raw.iter().map(|v| v.map(|z| z.re)).collect(),
        imaginary_residue: residue,
    })
}

/// `ρ_E` from either `ψ` or `ψ + Δψ`.
pub fn rho_e_with(
    order: DensityOrder,
    psi: &SpinorField,
    field: &FieldConfiguration,
    gamma: &GammaSet,
    units: &UnitsContext,
) -> Result<DipoleDensity> {
    match order {
        DensityOrder::Unperturbed => rho_e(psi, gamma, units),
        DensityOrder::Corrected => {
            let shifted = psi.add(&delta_psi(field, psi, units)?)?;
            rho_e(&shifted, gamma, units)
        }
    }
}
