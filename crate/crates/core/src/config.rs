//! Flat `key = value` run configuration with `#` comments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::units::{ChargeConvention, UnitsContext};

/// Amplitude norms further than this from one are renormalised with a warning.
pub const RENORMALIZE_WARN: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// How `ΔL₃` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitalPath {
    /// Analytic derivatives of the closed-form potential.
    #[default]
    Analytic,
    /// Stencil derivatives of the sampled potential.
    Stencil,
    /// Linear terms of `∫(ψ+Δψ)†ℓ(ψ+Δψ)`, stencil derivatives of the spinors.
    Direct,
}

impl FromStr for OrbitalPath {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "analytic" => Ok(OrbitalPath::Analytic),
            "stencil" => Ok(OrbitalPath::Stencil),
            "direct" => Ok(OrbitalPath::Direct),
            other => Err(format!("expected analytic|stencil|direct, got `{other}`")),
        }
    }
}

impl fmt::Display for OrbitalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitalPath::Analytic => "analytic",
            OrbitalPath::Stencil => "stencil",
            OrbitalPath::Direct => "direct",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub field_tesla: f64,
    pub apparatus_m: f64,
    /// Momentum along +z, eV.
    pub k_momentum_ev: f64,
    /// Momentum along x, eV.
    pub k_transverse_ev: f64,
    pub lambda_plus_mag: f64,
    pub lambda_plus_phase: f64,
    pub lambda_minus_mag: f64,
    pub lambda_minus_phase: f64,
    pub grid_n: usize,
    pub charge_convention: ChargeConvention,
    pub output_path: PathBuf,
    pub l_path: OrbitalPath,
    /// Worker threads; 0 leaves the choice to the runtime.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mass = UnitsContext::default().electron_mass();
        Self {
            field_tesla: 1e-5,
            apparatus_m: 1.0,
            k_momentum_ev: 10.0 * mass,
            k_transverse_ev: 0.0,
            lambda_plus_mag: std::f64::consts::FRAC_1_SQRT_2,
            lambda_plus_phase: 0.0,
            lambda_minus_mag: std::f64::consts::FRAC_1_SQRT_2,
            lambda_minus_phase: 0.0,
            grid_n: 32,
            charge_convention: ChargeConvention::Physical,
            output_path: PathBuf::from("oam_shift.csv"),
            l_path: OrbitalPath::Analytic,
            threads: 0,
        }
    }
}

pub const KEYS: [&str; 13] = [
    "field_tesla",
    "apparatus_m",
    "k_momentum_eV",
    "k_transverse_eV",
    "lambda_plus_mag",
    "lambda_plus_phase",
    "lambda_minus_mag",
    "lambda_minus_phase",
    "grid_n",
    "charge_convention",
    "output_path",
    "l_path",
    "threads",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: e.to_string(),
    })
}

impl RunConfig {
    /// Defaults overridden by the lines of a config file.
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: no + 1,
                text: raw.to_string(),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "field_tesla" => self.field_tesla = parse(key, value)?,
            "apparatus_m" => self.apparatus_m = parse(key, value)?,
            "k_momentum_eV" => self.k_momentum_ev = parse(key, value)?,
            "k_transverse_eV" => self.k_transverse_ev = parse(key, value)?,
            "lambda_plus_mag" => self.lambda_plus_mag = parse(key, value)?,
            "lambda_plus_phase" => self.lambda_plus_phase = parse(key, value)?,
            "lambda_minus_mag" => self.lambda_minus_mag = parse(key, value)?,
            "lambda_minus_phase" => self.lambda_minus_phase = parse(key, value)?,
            "grid_n" => self.grid_n = parse(key, value)?,
            "charge_convention" => self.charge_convention = parse(key, value)?,
            "output_path" => self.output_path = PathBuf::from(value),
            "l_path" => self.l_path = parse(key, value)?,
            "threads" => self.threads = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Check ranges and return the unit-norm amplitudes plus any warnings.
    pub fn validate(&self) -> Result<(Complex64, Complex64, Vec<String>), ConfigError> {
        if self.grid_n < 4 {
            return Err(ConfigError::Invalid(format!(
                "grid_n must be >= 4, got {}",
                self.grid_n
            )));
        }
        let finite = [
            ("field_tesla", self.field_tesla),
            ("apparatus_m", self.apparatus_m),
            ("k_momentum_eV", self.k_momentum_ev),
            ("k_transverse_eV", self.k_transverse_ev),
            ("lambda_plus_mag", self.lambda_plus_mag),
            ("lambda_plus_phase", self.lambda_plus_phase),
            ("lambda_minus_mag", self.lambda_minus_mag),
            ("lambda_minus_phase", self.lambda_minus_phase),
        ];
        if let Some((k, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(ConfigError::Invalid(format!("{k} must be finite, got {v}")));
        }
        if self.apparatus_m <= 0.0 {
            return Err(ConfigError::Invalid(format!(
                "apparatus_m must be positive, got {}",
                self.apparatus_m
            )));
        }
        if self.k_momentum_ev < 0.0 {
            return Err(ConfigError::Invalid(
                "k_momentum_eV is the momentum along +z and must be >= 0".into(),
            ));
        }
        if self.lambda_plus_mag < 0.0 || self.lambda_minus_mag < 0.0 {
            return Err(ConfigError::Invalid("amplitude magnitudes must be >= 0".into()));
        }
        let lp = Complex64::from_polar(self.lambda_plus_mag, self.lambda_plus_phase);
        let lm = Complex64::from_polar(self.lambda_minus_mag, self.lambda_minus_phase);
        let norm = lp.norm_sqr() + lm.norm_sqr();
        if norm == 0.0 {
            return Err(ConfigError::Invalid("both spin amplitudes are zero".into()));
        }
        let mut warnings = Vec::new();
        if (norm - 1.0).abs() > RENORMALIZE_WARN {
            warnings.push(format!(
                "|lambda_plus|^2 + |lambda_minus|^2 = {norm}; amplitudes renormalised to 1"
            ));
        }
        let s = norm.sqrt().recip();
        Ok((lp * s, lm * s, warnings))
    }

    pub fn units(&self) -> UnitsContext {
        UnitsContext::new(self.charge_convention)
    }
}
