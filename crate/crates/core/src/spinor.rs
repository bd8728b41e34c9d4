//! Free-electron plane-wave spinors and their lattice samples.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::Spinor;
use crate::lattice::{integrate_scalar, LatticeBox};

/// Largest tolerated departure of `|λ₊|² + |λ₋|²` from one.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// `S₃` eigenvalue label in the rest frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    fn pauli_spinor(self) -> [Complex64; 2] {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        match self {
            SpinLabel::Up => [one, zero],
            SpinLabel::Down => [zero, one],
        }
    }
}

/// Positive-energy solution `u_s(k)` of `(γ^μ k_μ − m) u = 0`, normalised to `u†u = 2E₀`.
///
/// Standard-representation form: `u = (√(E₀+m) ξ, (σ·k) ξ / √(E₀+m))`.
pub fn plane_wave_spinor(k: [f64; 3], spin: SpinLabel, mass: f64) -> Result<Spinor> {
    if mass.is_nan() || mass <= 0.0 {
        return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
    }
    let energy = (k.iter().map(|v| v * v).sum::<f64>() + mass * mass).sqrt();
    let root = (energy + mass).sqrt();
    let [x0, x1] = spin.pauli_spinor();
    // σ·k = [[k3, k1 - i k2], [k1 + i k2, -k3]]
    let kc = Complex64::new(k[0], -k[1]);
    let lower0 = x0 * k[2] + x1 * kc;
    let lower1 = x0 * kc.conj() - x1 * k[2];
    Ok([x0 * root, x1 * root, lower0 / root, lower1 / root])
}

/// Round a momentum component to the nearest mode `2πn/d` of a periodic box.
pub fn round_to_mode(k: f64, d: f64) -> (f64, i64) {
    let n = (k * d / (2.0 * PI)).round();
    (2.0 * PI * n / d, n as i64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveElectron {
    k: [f64; 3],
    mass: f64,
    lambda_plus: Complex64,
    lambda_minus: Complex64,
}

impl PlaneWaveElectron {
    /// Fails unless `|λ₊|² + |λ₋|² = 1` within [`NORM_TOLERANCE`].
    pub fn new(
        k: [f64; 3],
        mass: f64,
        lambda_plus: Complex64,
        lambda_minus: Complex64,
    ) -> Result<Self> {
        let state = Self::unchecked(k, mass, lambda_plus, lambda_minus)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "|λ+|² + |λ-|² = {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Rescale the amplitudes to unit norm.
    pub fn normalized(
        k: [f64; 3],
        mass: f64,
        lambda_plus: Complex64,
        lambda_minus: Complex64,
    ) -> Result<Self> {
        let raw = Self::unchecked(k, mass, lambda_plus, lambda_minus)?;
        let norm = raw.norm();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidParameter("both spin amplitudes vanish".into()));
        }
        let s = norm.sqrt().recip();
        Self::new(k, mass, lambda_plus * s, lambda_minus * s)
    }

    fn unchecked(
        k: [f64; 3],
        mass: f64,
        lambda_plus: Complex64,
        lambda_minus: Complex64,
    ) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        if k.iter().any(|v| !v.is_finite()) || !lambda_plus.is_finite() || !lambda_minus.is_finite()
        {
            return Err(Error::InvalidParameter("state parameters must be finite".into()));
        }
        Ok(Self {
            k,
            mass,
            lambda_plus,
            lambda_minus,
        })
    }

    pub fn momentum(&self) -> [f64; 3] {
        self.k
    }

    pub fn momentum_magnitude(&self) -> f64 {
        self.k.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn lambda_plus(&self) -> Complex64 {
        self.lambda_plus
    }

    pub fn lambda_minus(&self) -> Complex64 {
        self.lambda_minus
    }

    /// `E₀ = √(|k|² + m²)`.
    pub fn energy(&self) -> f64 {
        (self.momentum_magnitude().powi(2) + self.mass * self.mass).sqrt()
    }

    /// `|λ₊|² + |λ₋|²`.
    pub fn norm(&self) -> f64 {
        state_norm(self)
    }

    /// `λ₊ λ₋*`, the interference term that drives the spin shift.
    pub fn mixing(&self) -> Complex64 {
        self.lambda_plus * self.lambda_minus.conj()
    }

    /// `λ₊ u_↑(k) + λ₋ u_↓(k)`.
    pub fn spinor(&self) -> Spinor {
        let up = plane_wave_spinor(self.k, SpinLabel::Up, self.mass).expect("mass validated");
        let down = plane_wave_spinor(self.k, SpinLabel::Down, self.mass).expect("mass validated");
        [0, 1, 2, 3].map(|i| self.lambda_plus * up[i] + self.lambda_minus * down[i])
    }
}

pub fn state_norm(state: &PlaneWaveElectron) -> f64 {
    state.lambda_plus.norm_sqr() + state.lambda_minus.norm_sqr()
}

/// Four-component field sampled at every site of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    lattice: LatticeBox,
    data: Vec<Spinor>,
}

impl SpinorField {
    pub fn new(lattice: LatticeBox, data: Vec<Spinor>) -> Result<Self> {
        lattice.check_len(data.len(), "spinor field")?;
        if data.iter().flatten().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter("spinor samples must be finite".into()));
        }
        Ok(Self { lattice, data })
    }

    pub fn lattice(&self) -> &LatticeBox {
        &self.lattice
    }

    pub fn data(&self) -> &[Spinor] {
        &self.data
    }

    /// One component (0-based) across all sites.
    pub fn component(&self, c: usize) -> Vec<Complex64> {
        self.data.iter().map(|s| s[c]).collect()
    }

    /// `ψ†ψ` at every site.
    pub fn density(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|s| s.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }

    /// `∫ ψ†ψ dx`.
    pub fn total_norm(&self) -> f64 {
        integrate_scalar(&self.density(), &self.lattice).expect("length checked at construction")
    }

    /// Site-wise sum of two fields on the same lattice.
    pub fn add(&self, other: &SpinorField) -> Result<SpinorField> {
        self.lattice.check_same(&other.lattice, "spinor field sum")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| [0, 1, 2, 3].map(|i| a[i] + b[i]))
            .collect();
        Ok(SpinorField {
            lattice: self.lattice,
            data,
        })
    }
}

/// Box-normalised superposition `[λ₊u_↑ + λ₋u_↓] e^{ik·x} / √(2E₀V)`.
pub fn superposition_field(state: &PlaneWaveElectron, lattice: &LatticeBox) -> SpinorField {
    let amplitude = state.spinor();
    let scale = (2.0 * state.energy() * lattice.volume()).sqrt().recip();
    let k = state.momentum();
    let data = lattice.map_sites(|_, x| {
        let phase = Complex64::from_polar(scale, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
        amplitude.map(|u| u * phase)
    });
    SpinorField {
        lattice: *lattice,
        data,
    }
}
