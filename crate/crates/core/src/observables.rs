//! Spin and orbital angular momentum functionals, their first-order shifts
//! under a magnetic potential, and the closed-form plane-wave expectation values.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{average_potential, ConstantMagneticField, FieldConfiguration};
use crate::gamma::{levi_civita, GammaSet, SpinOperators};
use crate::lattice::{derivative, integrate_complex, integrate_scalar, Boundary, LatticeBox};
use crate::perturbation::{delta_psi, DipoleDensity};
use crate::spinor::{PlaneWaveElectron, SpinorField};
use crate::units::UnitsContext;

/// Absolute floor for relative-residual denominators.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

/// Largest tolerated `|Im ΔL| / ∫|integrand|`.
pub const OAM_IMAG_TOLERANCE: f64 = 1e-8;

/// Published reference value of the spin shift coefficient.
pub const REFERENCE_COEFFICIENT: f64 = 0.029;

fn check_axis(axis: usize) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::AxisOutOfRange(axis))
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `|a + b| / max(|a|, floor)`: how far `b` is from cancelling `a`.
pub fn cancellation_residual(a: f64, b: f64) -> f64 {
    (a + b).abs() / a.abs().max(RESIDUAL_FLOOR)
}

/// `ℓ_axis g = −i (x × ∇g)_axis` by central differences.
pub fn oam_operator_apply(
    g: &[Complex64],
    lattice: &LatticeBox,
    axis: usize,
    boundary: Boundary,
) -> Result<Vec<Complex64>> {
    check_axis(axis)?;
    let (a, b) = match axis {
        1 => (1, 2),
        2 => (2, 0),
        _ => (0, 1),
    };
    // (x × ∇)_axis = x_a ∂_b − x_b ∂_a with (axis, a, b) cyclic
    let db = derivative(g, lattice, b, boundary)?;
    let da = derivative(g, lattice, a, boundary)?;
    Ok((0..lattice.site_count())
        .into_par_iter()
        .map(|idx| {
            let x = lattice.position(idx);
            (db[idx] * x[a] - da[idx] * x[b]) * Complex64::new(0.0, -1.0)
        })
        .collect())
}

/// `ℓ_axis A_j` for every spatial potential component, at every site.
fn oam_of_potential(
    field: &FieldConfiguration,
    lattice: &LatticeBox,
    axis: usize,
) -> Result<Vec<[Complex64; 3]>> {
    check_axis(axis)?;
    match field {
        FieldConfiguration::ClosedForm(p) => Ok(lattice.map_sites(|_, x| {
            let jac = p.jacobian(x);
            [1, 2, 3].map(|j| {
                let mut s = 0.0;
                for a in 1..=3 {
                    for b in 1..=3 {
                        let e = levi_civita(axis, a, b);
                        if e != 0.0 {
                            s += e * x[a - 1] * jac[j][b - 1];
                        }
                    }
                }
                Complex64::new(0.0, -s)
            })
        })),
        FieldConfiguration::Sampled(s) => {
            s.lattice.check_same(lattice, "potential vs density")?;
            let per_component: Vec<Vec<Complex64>> = (1..=3)
                .map(|j| {
                    let comp: Vec<Complex64> =
                        s.values.iter().map(|v| Complex64::new(v[j], 0.0)).collect();
                    oam_operator_apply(&comp, lattice, axis, s.boundary)
                })
                .collect::<Result<_>>()?;
            Ok((0..lattice.site_count())
                .map(|idx| [0, 1, 2].map(|j| per_component[j][idx]))
                .collect())
        }
    }
}

/// `∫ ψ† S_i ψ dx` for each axis.
pub fn unperturbed_spin(psi: &SpinorField, ops: &SpinOperators) -> [f64; 3] {
    let lattice = psi.lattice();
    [0, 1, 2].map(|i| {
        let f: Vec<f64> = psi
            .data()
            .par_iter()
            .map(|p| ops.spin[i].sandwich(p, p).re)
            .collect();
        integrate_scalar(&f, lattice).expect("field length matches its lattice")
    })
}

/// `∫ ψ† ℓ_i ψ dx` for each axis, derivatives by stencil.
pub fn unperturbed_oam(psi: &SpinorField, boundary: Boundary) -> Result<[f64; 3]> {
    let zero = SpinorField::new(*psi.lattice(), vec![[Complex64::default(); 4]; psi.data().len()])?;
    oam_bilinear(psi, psi, &zero, boundary).map(|v| v.map(|z| z.re))
}

/// `∫ (a† ℓ b + c† ℓ a)` summed over components, for every axis.
fn oam_bilinear(
    a: &SpinorField,
    b: &SpinorField,
    c: &SpinorField,
    boundary: Boundary,
) -> Result<[Complex64; 3]> {
    let lattice = a.lattice();
    let mut out = [Complex64::default(); 3];
    for axis in 1..=3 {
        let mut total = vec![Complex64::default(); lattice.site_count()];
        for comp in 0..4 {
            let lb = oam_operator_apply(&b.component(comp), lattice, axis, boundary)?;
            let la = oam_operator_apply(&a.component(comp), lattice, axis, boundary)?;
            for (idx, t) in total.iter_mut().enumerate() {
                *t += a.data()[idx][comp].conj() * lb[idx] + c.data()[idx][comp].conj() * la[idx];
            }
        }
        out[axis - 1] = integrate_complex(&total, lattice)?;
    }
    Ok(out)
}

/// `ΔS = |e| ∫ A × ρ_E dx`.
pub fn delta_s(
    field: &FieldConfiguration,
    rho: &DipoleDensity,
    units: &UnitsContext,
) -> Result<[f64; 3]> {
    let lattice = rho.lattice();
    field.require_magnetic(lattice)?;
    let values = field.values_on(lattice)?;
    let integrand: Vec<[f64; 3]> = values
        .par_iter()
        .zip(rho.data().par_iter())
        .map(|(a, r)| cross([a[1], a[2], a[3]], *r))
        .collect();
    let e = units.charge();
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let f: Vec<f64> = integrand.iter().map(|v| v[i]).collect();
        *o = e * integrate_scalar(&f, lattice)?;
    }
    Ok(out)
}

/// Constant `H ∥ z` in symmetric gauge: `ΔS₃ = −|e| (H₃/2) ∫ (x₁ρ₁ + x₂ρ₂) dx`.
pub fn delta_s3_constant(h3: f64, rho: &DipoleDensity, units: &UnitsContext) -> f64 {
    let lattice = rho.lattice();
    let f: Vec<f64> = rho
        .data()
        .par_iter()
        .enumerate()
        .map(|(idx, r)| {
            let x = lattice.position(idx);
            x[1] * r[1] + x[0] * r[0]
        })
        .collect();
    -units.charge() * 0.5 * h3 * integrate_scalar(&f, lattice).expect("density length checked")
}

/// `ΔL_axis = −i|e| ∫ Σ_j ρ_j (ℓ_axis A_j) dx`.
///
/// Closed-form potentials use their analytic derivatives; sampled ones go
/// through the stencil with the boundary treatment they carry.
pub fn delta_l(
    field: &FieldConfiguration,
    rho: &DipoleDensity,
    axis: usize,
    units: &UnitsContext,
) -> Result<f64> {
    let lattice = rho.lattice();
    field.require_magnetic(lattice)?;
    let ell_a = oam_of_potential(field, lattice, axis)?;
    let integrand: Vec<Complex64> = ell_a
        .par_iter()
        .zip(rho.data().par_iter())
        .map(|(la, r)| (0..3).map(|j| la[j] * r[j]).sum::<Complex64>() * Complex64::new(0.0, -1.0))
        .collect();
    let total = integrate_complex(&integrand, lattice)? * units.charge();
    let abs: Vec<f64> = integrand.iter().map(|z| z.norm()).collect();
    let scale = units.charge() * integrate_scalar(&abs, lattice)?;
    let residue = total.im.abs() / scale.max(RESIDUAL_FLOOR);
    if residue > OAM_IMAG_TOLERANCE {
        return Err(Error::ImaginaryResidue {
            quantity: "orbital angular momentum shift",
            residue,
            tolerance: OAM_IMAG_TOLERANCE,
        });
    }
    Ok(total.re)
}

pub fn delta_l3(field: &FieldConfiguration, rho: &DipoleDensity, units: &UnitsContext) -> Result<f64> {
    delta_l(field, rho, 3, units)
}

/// Total shift for a constant field in Levi-Civita form,
/// `ΔJ_i = (|e|/2) ∫ ε_ijk H_j (x × ρ_E)_k dx`.
///
/// The overall sign is the one for which `ΔJ = ΔS + ΔL` with the shifts
/// computed in symmetric gauge by [`delta_s`] and [`delta_l`].
pub fn delta_j(field: &ConstantMagneticField, rho: &DipoleDensity, units: &UnitsContext) -> [f64; 3] {
    let lattice = rho.lattice();
    let h = field.h;
    let integrand: Vec<[f64; 3]> = rho
        .data()
        .par_iter()
        .enumerate()
        .map(|(idx, r)| cross(h, cross(lattice.position(idx), *r)))
        .collect();
    let half_e = 0.5 * units.charge();
    [0, 1, 2].map(|i| {
        let f: Vec<f64> = integrand.iter().map(|v| v[i]).collect();
        half_e * integrate_scalar(&f, lattice).expect("density length checked")
    })
}

/// Spin, orbital and total shifts, each a real three-vector (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMomentumShift {
    pub ds: [f64; 3],
    pub dl: [f64; 3],
    pub dj: [f64; 3],
}

impl AngularMomentumShift {
    /// `ΔS` and all three `ΔL_i` from the density; `ΔJ = ΔS + ΔL`.
    pub fn from_density(
        field: &FieldConfiguration,
        rho: &DipoleDensity,
        units: &UnitsContext,
    ) -> Result<Self> {
        let ds = delta_s(field, rho, units)?;
        let mut dl = [0.0; 3];
        for (i, v) in dl.iter_mut().enumerate() {
            *v = delta_l(field, rho, i + 1, units)?;
        }
        Ok(Self::new(ds, dl))
    }

    pub fn new(ds: [f64; 3], dl: [f64; 3]) -> Self {
        Self {
            ds,
            dl,
            dj: [0, 1, 2].map(|i| ds[i] + dl[i]),
        }
    }
}

/// First-order shifts straight from the definitions: substitute
/// `ψ → ψ + Δψ` into `∫ψ†Sψ` and `∫ψ†ℓψ` and keep the linear terms.
/// Orbital derivatives act on the spinors through the stencil.
pub fn direct_first_order_shift(
    field: &FieldConfiguration,
    psi: &SpinorField,
    gamma: &GammaSet,
    units: &UnitsContext,
    boundary: Boundary,
) -> Result<AngularMomentumShift> {
    field.require_magnetic(psi.lattice())?;
    let dpsi = delta_psi(field, psi, units)?;
    let ops = gamma.spin_operators();
    let lattice = psi.lattice();
    let mut ds = [0.0; 3];
    for (i, v) in ds.iter_mut().enumerate() {
        let f: Vec<f64> = psi
            .data()
            .par_iter()
            .zip(dpsi.data().par_iter())
            .map(|(p, d)| 2.0 * ops.spin[i].sandwich(p, d).re)
            .collect();
        *v = integrate_scalar(&f, lattice)?;
    }
    let dl = oam_bilinear(psi, &dpsi, &dpsi, boundary)?;
    Ok(AngularMomentumShift::new(ds, dl.map(|z| z.re)))
}

/// `⟨ΔS₃⟩ = −2 (|e|/m_e)(|k|/E₀)[⟨A₁⟩ Re(λ₊λ₋*) − ⟨A₂⟩ Im(λ₊λ₋*)]`.
pub fn expectation_delta_s3(
    state: &PlaneWaveElectron,
    avg_a1: f64,
    avg_a2: f64,
    units: &UnitsContext,
) -> f64 {
    let velocity = state.momentum_magnitude() / state.energy();
    expectation_with_velocity(velocity, state, avg_a1, avg_a2, units)
}

fn expectation_with_velocity(
    velocity: f64,
    state: &PlaneWaveElectron,
    avg_a1: f64,
    avg_a2: f64,
    units: &UnitsContext,
) -> f64 {
    let mix = state.mixing();
    -2.0 * units.coupling() * velocity * (avg_a1 * mix.re - avg_a2 * mix.im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadlineEstimate {
    /// Field in eV².
    pub h3: f64,
    /// Apparatus scale in eV⁻¹.
    pub d: f64,
    /// `|e| |H₃| d / m_e`, multiplying `sgn(H₃)[Re + Im]`.
    pub coefficient: f64,
    /// `Re(λ₊λ₋*) + Im(λ₊λ₋*)`.
    pub mixing_sum: f64,
    /// Full `⟨ΔS₃⟩`.
    pub value: f64,
}

impl HeadlineEstimate {
    pub fn ratio_to_reference(&self) -> f64 {
        self.coefficient / REFERENCE_COEFFICIENT
    }
}

/// Ultrarelativistic (`|k|/E₀ = 1`) spin shift for a field along z with the
/// apparatus-averaged potentials.
pub fn headline_estimate(
    h_tesla: f64,
    d_meters: f64,
    state: &PlaneWaveElectron,
    units: &UnitsContext,
) -> Result<HeadlineEstimate> {
    let h3 = units.tesla_to_natural(h_tesla);
    let d = units.meter_to_natural(d_meters);
    let (a1, a2) = average_potential(h3, d)?;
    let mix = state.mixing();
    Ok(HeadlineEstimate {
        h3,
        d,
        coefficient: units.coupling() * h3.abs() * d,
        mixing_sum: mix.re + mix.im,
        value: expectation_with_velocity(1.0, state, a1, a2, units),
    })
}

/// Grid search of `|Re(λ₊λ₋*) + Im(λ₊λ₋*)|` over amplitude split and relative
/// phase. Returns `(max, θ, φ)` with `|λ₊| = cos θ`, `|λ₋| = sin θ`, `φ = arg λ₊ − arg λ₋`.
pub fn max_mixing_sum(steps: usize) -> (f64, f64, f64) {
    let steps = steps.max(2);
    let mut best = (0.0, 0.0, 0.0);
    for i in 0..=steps {
        let theta = 0.5 * PI * i as f64 / steps as f64;
        for j in 0..steps {
            let phi = 2.0 * PI * j as f64 / steps as f64;
            let v = (theta.cos() * theta.sin() * (phi.cos() + phi.sin())).abs();
            if v > best.0 {
                best = (v, theta, phi);
            }
        }
    }
    best
}
