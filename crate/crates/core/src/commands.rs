//! The `verify`, `estimate` and `sweep` front ends, as library functions.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::config::{ConfigError, OrbitalPath, RunConfig};
use crate::error::Error;
use crate::fields::{average_potential, constant_field_potential, ConstantMagneticField, FieldConfiguration};
use crate::gamma::{ComplexMatrix4, GammaSet};
use crate::lattice::{Boundary, LatticeBox};
use crate::observables::{
    cancellation_residual, delta_j, delta_l3, delta_s, delta_s3_constant, direct_first_order_shift,
    expectation_delta_s3, headline_estimate, max_mixing_sum, AngularMomentumShift, HeadlineEstimate,
    REFERENCE_COEFFICIENT, RESIDUAL_FLOOR,
};
use crate::perturbation::{rho_e, DipoleDensity};
use crate::spinor::{plane_wave_spinor, round_to_mode, superposition_field, PlaneWaveElectron, SpinLabel};
use crate::units::{ChargeConvention, UnitsContext};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Everything derived from a [`RunConfig`] that the computations need.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub units: UnitsContext,
    pub lattice: LatticeBox,
    pub state: PlaneWaveElectron,
    pub field: ConstantMagneticField,
    /// Apparatus scale in eV⁻¹.
    pub d: f64,
    /// Box modes `(n_x, n_z)` the requested momenta were rounded to.
    pub modes: (i64, i64),
    pub warnings: Vec<String>,
    pub l_path: OrbitalPath,
}

impl Scenario {
    pub fn from_config(cfg: &RunConfig) -> Result<Self, CommandError> {
        let (lp, lm, mut warnings) = cfg.validate()?;
        let units = cfg.units();
        let d = units.meter_to_natural(cfg.apparatus_m);
        let lattice = LatticeBox::cornered_cube(d, cfg.grid_n)?;
        let (kx, nx) = round_to_mode(cfg.k_transverse_ev, d);
        let (kz, nz) = round_to_mode(cfg.k_momentum_ev, d);
        for (name, want, got) in [("k_transverse_eV", cfg.k_transverse_ev, kx), ("k_momentum_eV", cfg.k_momentum_ev, kz)] {
            if want != got {
                warnings.push(format!(
                    "{name} rounded from {want:e} to box mode {got:e} eV (shift {:e} eV)",
                    got - want
                ));
            }
        }
        let state = PlaneWaveElectron::new([kx, 0.0, kz], units.electron_mass(), lp, lm)?;
        Ok(Self {
            units,
            lattice,
            state,
            field: ConstantMagneticField::from_tesla([0.0, 0.0, cfg.field_tesla], &units),
            d,
            modes: (nx, nz),
            warnings,
            l_path: cfg.l_path,
        })
    }

    pub fn density(&self, gamma: &GammaSet) -> Result<DipoleDensity, Error> {
        rho_e(&superposition_field(&self.state, &self.lattice), gamma, &self.units)
    }
}

/// One row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftPoint {
    pub delta_s3: f64,
    pub delta_l3: f64,
    pub conservation_residual: f64,
    pub expectation_delta_s3: f64,
    pub delta_j: [f64; 3],
}

/// `ΔS₃`, `ΔL₃` (along the scenario's orbital path), closed-form `⟨ΔS₃⟩` and `ΔJ`.
pub fn evaluate(scenario: &Scenario) -> Result<ShiftPoint, Error> {
    let gamma = GammaSet::dirac();
    let units = &scenario.units;
    let psi = superposition_field(&scenario.state, &scenario.lattice);
    let rho = rho_e(&psi, &gamma, units)?;
    let potential = constant_field_potential(scenario.field);
    let ds3 = delta_s(&potential, &rho, units)?[2];
    let dl3 = match scenario.l_path {
        OrbitalPath::Analytic => delta_l3(&potential, &rho, units)?,
        OrbitalPath::Stencil => {
            let sampled = potential.to_sampled(&scenario.lattice, Boundary::Open)?;
            delta_l3(&sampled, &rho, units)?
        }
        OrbitalPath::Direct => {
            direct_first_order_shift(&potential, &psi, &gamma, units, Boundary::Open)?.dl[2]
        }
    };
    let (a1, a2) = average_potential(scenario.field.h[2], scenario.d)?;
    Ok(ShiftPoint {
        delta_s3: ds3,
        delta_l3: dl3,
        conservation_residual: cancellation_residual(ds3, dl3),
        expectation_delta_s3: expectation_delta_s3(&scenario.state, a1, a2, units),
        delta_j: delta_j(&scenario.field, &rho, units),
    })
}

// ---------------------------------------------------------------------------
// verify

pub mod thresholds {
    pub const ALGEBRA: f64 = 1e-12;
    pub const DIRAC_RESIDUAL: f64 = 1e-10;
    pub const NORMALIZATION: f64 = 1e-10;
    pub const DENSITY_REALITY: f64 = 1e-10;
    pub const CONSERVATION: f64 = 1e-6;
    pub const DELTA_J_NULL: f64 = 1e-15;
    pub const DELTA_J_CONSISTENCY: f64 = 1e-4;
    pub const LINEARITY: f64 = 1e-12;
    pub const CLOSED_FORM: f64 = 1e-8;
    pub const POLARIZED_NULL: f64 = 1e-15;
    pub const TRANSVERSE_SPIN_NULL: f64 = 1e-12;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self { name, measured, threshold, note: None }
    }

    fn failed(name: &'static str, threshold: f64, err: impl fmt::Display) -> Self {
        Self {
            name,
            measured: f64::INFINITY,
            threshold,
            note: Some(err.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.measured <= self.threshold
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} measured={:.3e} threshold={:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.threshold
        )?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(a.abs()).max(RESIDUAL_FLOOR)
}

fn check_with<F>(name: &'static str, threshold: f64, f: F) -> Check
where
    F: FnOnce() -> Result<(f64, Option<String>), Error>,
{
    match f() {
        Ok((measured, note)) => Check { name, measured, threshold, note },
        Err(e) => Check::failed(name, threshold, e),
    }
}

/// Run the invariant suite on the Dirac representation.
pub fn verify(cfg: &RunConfig) -> Result<VerifyReport, CommandError> {
    verify_with_gamma(cfg, &GammaSet::dirac())
}

/// Run the invariant suite with a caller-supplied gamma set.
pub fn verify_with_gamma(cfg: &RunConfig, gamma: &GammaSet) -> Result<VerifyReport, CommandError> {
    use thresholds::*;
    let sc = Scenario::from_config(cfg)?;
    let units = sc.units;
    let mut checks = vec![
        Check::new("clifford", gamma.clifford_residual(), ALGEBRA),
        Check::new("hermiticity", gamma.hermiticity_residual(), ALGEBRA),
        Check::new("spin-commutators", gamma.spin_operators().commutator_residual(), ALGEBRA),
    ];

    checks.push(check_with("dirac-equation", DIRAC_RESIDUAL, || {
        let m = units.electron_mass();
        let mut worst = 0.0_f64;
        let momenta = [sc.state.momentum(), [0.0; 3], [0.3 * m, -1.2 * m, 2.0 * m], [-4.0 * m, 0.5 * m, -0.1 * m]];
        for k in momenta {
            let e = (k.iter().map(|v| v * v).sum::<f64>() + m * m).sqrt();
            let op = gamma.slash(e, k) - ComplexMatrix4::identity().scale(Complex64::new(m, 0.0));
            for spin in [SpinLabel::Up, SpinLabel::Down] {
                let u = plane_wave_spinor(k, spin, m)?;
                let r = op.apply(&u);
                let norm = |v: &[Complex64; 4]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                worst = worst.max(norm(&r) / (e * norm(&u)));
            }
        }
        Ok((worst, None))
    }));

    let psi = superposition_field(&sc.state, &sc.lattice);
    checks.push(Check::new("normalization", (psi.total_norm() - 1.0).abs(), NORMALIZATION));

    let rho = match rho_e(&psi, gamma, &units) {
        Ok(r) => {
            checks.push(Check::new("density-reality", r.imaginary_residue(), DENSITY_REALITY));
            r
        }
        Err(e) => {
            checks.push(Check::failed("density-reality", DENSITY_REALITY, e));
            return Ok(VerifyReport { checks });
        }
    };

    let potential = constant_field_potential(sc.field);
    let h3 = sc.field.h[2];

    checks.push(check_with("conservation", CONSERVATION, || {
        let ds3 = delta_s3_constant(h3, &rho, &units);
        let dl3 = delta_l3(&potential, &rho, &units)?;
        Ok((
            cancellation_residual(ds3, dl3),
            Some(format!("dS3={ds3:.6e} dL3={dl3:.6e}")),
        ))
    }));

    let shift = AngularMomentumShift::from_density(&potential, &rho, &units);
    let dj = delta_j(&sc.field, &rho, &units);
    checks.push(check_with("delta-j3-null", DELTA_J_NULL, || {
        let scale = dj[0].abs().max(dj[1].abs()).max(RESIDUAL_FLOOR);
        Ok((dj[2].abs() / scale, None))
    }));
    checks.push(match &shift {
        Ok(s) => {
            let scale = s.dj.iter().chain(&dj).map(|v| v.abs()).fold(RESIDUAL_FLOOR, f64::max);
            let worst = (0..2).map(|i| (dj[i] - s.dj[i]).abs() / scale).fold(0.0, f64::max);
            Check::new("delta-j-consistency", worst, DELTA_J_CONSISTENCY)
        }
        Err(e) => Check::failed("delta-j-consistency", DELTA_J_CONSISTENCY, e),
    });

    checks.push(check_with("linearity", LINEARITY, || {
        let base = delta_s(&potential, &rho, &units)?[2];
        let base_l = delta_l3(&potential, &rho, &units)?;
        let c = 3.7;
        let scaled = constant_field_potential(sc.field.scaled(c));
        let mut worst = relative(delta_s(&scaled, &rho, &units)?[2], c * base);
        worst = worst.max(relative(delta_l3(&scaled, &rho, &units)?, c * base_l));
        let other = units.with_convention(match units.convention() {
            ChargeConvention::Physical => ChargeConvention::Unit,
            ChargeConvention::Unit => ChargeConvention::Physical,
        });
        let ratio = other.charge() / units.charge();
        // ρ_E carries no charge; only the explicit |e| prefactor changes.
        worst = worst.max(relative(delta_s(&potential, &rho, &other)?[2], ratio * base));
        worst = worst.max(relative(delta_l3(&potential, &rho, &other)?, ratio * base_l));
        Ok((worst, None))
    }));

    checks.push(check_with("closed-form-vs-quadrature", CLOSED_FORM, || {
        let (a1, a2) = average_potential(h3, sc.d)?;
        let uniform = FieldConfiguration::uniform([0.0, a1, a2, 0.0]);
        let quad = delta_s(&uniform, &rho, &units)?[2];
        let closed = expectation_delta_s3(&sc.state, a1, a2, &units);
        Ok((relative(quad, closed), Some(format!("quadrature={quad:.6e} closed={closed:.6e}"))))
    }));

    checks.push(check_with("polarized-null", POLARIZED_NULL, || {
        let (a1, a2) = average_potential(h3, sc.d)?;
        let k = sc.state.momentum();
        let m = sc.state.mass();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut worst = 0.0_f64;
        for (lp, lm) in [(one, zero), (zero, one), (Complex64::new(0.0, 1.0), zero)] {
            let s = PlaneWaveElectron::new(k, m, lp, lm)?;
            worst = worst.max(expectation_delta_s3(&s, a1, a2, &units).abs());
        }
        Ok((worst, None))
    }));

    if sc.state.momentum()[0] == 0.0 {
        checks.push(match &shift {
            Ok(s) => {
                let scale = s.ds[2].abs().max(RESIDUAL_FLOOR);
                Check::new(
                    "transverse-spin-null",
                    s.ds[0].abs().max(s.ds[1].abs()) / scale,
                    TRANSVERSE_SPIN_NULL,
                )
            }
            Err(e) => Check::failed("transverse-spin-null", TRANSVERSE_SPIN_NULL, e),
        });
    }

    Ok(VerifyReport { checks })
}

// ---------------------------------------------------------------------------
// estimate

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub field_tesla: f64,
    pub apparatus_m: f64,
    pub physical: HeadlineEstimate,
    pub unit: HeadlineEstimate,
    /// `⟨ΔS₃⟩` with the configured `|k|/E₀` instead of 1, active convention.
    pub finite_momentum_value: f64,
    pub convention: ChargeConvention,
    /// Grid-search maximum of `|Re(λ₊λ₋*) + Im(λ₊λ₋*)|`.
    pub max_mixing_sum: f64,
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl EstimateReport {
    pub const CSV_HEADER: &'static str = "field_tesla,apparatus_m,mixing_sum,coefficient_physical,delta_s3_physical,coefficient_unit,delta_s3_unit,reference_coefficient,ratio_physical,ratio_unit";

    pub fn csv_row(&self) -> String {
        [
            self.field_tesla,
            self.apparatus_m,
            self.physical.mixing_sum,
            self.physical.coefficient,
            self.physical.value,
            self.unit.coefficient,
            self.unit.value,
            REFERENCE_COEFFICIENT,
            self.physical.ratio_to_reference(),
            self.unit.ratio_to_reference(),
        ]
        .map(format_float)
        .join(",")
    }

    pub fn csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.csv_row())
    }
}

impl fmt::Display for EstimateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "field = {:e} T ({:.6e} eV^2), apparatus = {} m ({:.6e} eV^-1), |k|/E0 = 1",
            self.field_tesla, self.physical.h3, self.apparatus_m, self.physical.d
        )?;
        writeln!(f, "Re(l+ l-*) + Im(l+ l-*) = {:.6}", self.physical.mixing_sum)?;
        for (name, est) in [("physical", &self.physical), ("unit", &self.unit)] {
            writeln!(
                f,
                "{name:>8} charge: coefficient = {:.6e}  <dS3> = {:.6e}  ratio to {} = {:.4}",
                est.coefficient,
                est.value,
                REFERENCE_COEFFICIENT,
                est.ratio_to_reference()
            )?;
        }
        writeln!(
            f,
            "<dS3> at configured momentum ({} charge) = {:.6e}",
            self.convention, self.finite_momentum_value
        )?;
        write!(f, "max |Re + Im| over states (grid search) = {:.6}", self.max_mixing_sum)
    }
}

pub fn estimate(cfg: &RunConfig) -> Result<EstimateReport, CommandError> {
    let sc = Scenario::from_config(cfg)?;
    let units = |c| sc.units.with_convention(c);
    let physical = headline_estimate(cfg.field_tesla, cfg.apparatus_m, &sc.state, &units(ChargeConvention::Physical))?;
    let unit = headline_estimate(cfg.field_tesla, cfg.apparatus_m, &sc.state, &units(ChargeConvention::Unit))?;
    let (a1, a2) = average_potential(sc.field.h[2], sc.d)?;
    Ok(EstimateReport {
        field_tesla: cfg.field_tesla,
        apparatus_m: cfg.apparatus_m,
        physical,
        unit,
        finite_momentum_value: expectation_delta_s3(&sc.state, a1, a2, &sc.units),
        convention: sc.units.convention(),
        max_mixing_sum: max_mixing_sum(720).0,
    })
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    FieldTesla,
    ApparatusM,
    /// `arg λ₊ − arg λ₋`, radians.
    RelativePhase,
    /// `|λ₊|²`, in `[0, 1]`.
    AmplitudeSplit,
    GridN,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::FieldTesla => "field_tesla",
            SweepAxis::ApparatusM => "apparatus_m",
            SweepAxis::RelativePhase => "relative_phase",
            SweepAxis::AmplitudeSplit => "amplitude_split",
            SweepAxis::GridN => "grid_n",
        }
    }

    fn apply(self, cfg: &mut RunConfig, value: f64) -> Result<(), ConfigError> {
        match self {
            SweepAxis::FieldTesla => cfg.field_tesla = value,
            SweepAxis::ApparatusM => cfg.apparatus_m = value,
            SweepAxis::RelativePhase => {
                let mag = (cfg.lambda_plus_mag.powi(2) + cfg.lambda_minus_mag.powi(2)).sqrt();
                let mag = if mag > 0.0 { mag } else { 1.0 };
                cfg.lambda_plus_mag = mag * std::f64::consts::FRAC_1_SQRT_2;
                cfg.lambda_minus_mag = mag * std::f64::consts::FRAC_1_SQRT_2;
                cfg.lambda_plus_phase = value;
                cfg.lambda_minus_phase = 0.0;
            }
            SweepAxis::AmplitudeSplit => {
                if !(0.0..=1.0).contains(&value) {
                    return Err(ConfigError::Invalid(format!(
                        "amplitude_split must lie in [0, 1], got {value}"
                    )));
                }
                cfg.lambda_plus_mag = value.sqrt();
                cfg.lambda_minus_mag = (1.0 - value).sqrt();
            }
            SweepAxis::GridN => {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(ConfigError::Invalid(format!("grid_n must be a count, got {value}")));
                }
                cfg.grid_n = value.round() as usize;
            }
        }
        Ok(())
    }
}

impl FromStr for SweepAxis {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "field_tesla" => Ok(SweepAxis::FieldTesla),
            "apparatus_m" => Ok(SweepAxis::ApparatusM),
            "relative_phase" => Ok(SweepAxis::RelativePhase),
            "amplitude_split" => Ok(SweepAxis::AmplitudeSplit),
            "grid_n" => Ok(SweepAxis::GridN),
            other => Err(ConfigError::Invalid(format!(
                "unknown sweep axis `{other}` (field_tesla|apparatus_m|relative_phase|amplitude_split|grid_n)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// `steps` evenly spaced values from `min` to `max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.min],
            n => (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    if i == n - 1 { self.max } else { self.min + t * (self.max - self.min) }
                })
                .collect(),
        }
    }
}

pub const SWEEP_COLUMNS: &str = "delta_s3,delta_l3,conservation_residual,expectation_delta_s3,delta_j1,delta_j2,delta_j3";

/// Run the sweep and return the CSV text.
pub fn sweep(cfg: &RunConfig, spec: &SweepSpec) -> Result<String, CommandError> {
    if spec.steps == 0 {
        return Err(ConfigError::Invalid("sweep needs at least one step".into()).into());
    }
    let mut out = String::new();
    writeln!(out, "{},{}", spec.axis.name(), SWEEP_COLUMNS).expect("write to string");
    for value in spec.values() {
        let mut point_cfg = cfg.clone();
        spec.axis.apply(&mut point_cfg, value)?;
        let p = evaluate(&Scenario::from_config(&point_cfg)?)?;
        let row = [
            value,
            p.delta_s3,
            p.delta_l3,
            p.conservation_residual,
            p.expectation_delta_s3,
            p.delta_j[0],
            p.delta_j[1],
            p.delta_j[2],
        ]
        .map(format_float)
        .join(",");
        writeln!(out, "{row}").expect("write to string");
    }
    Ok(out)
}

pub fn write_output(path: &std::path::Path, text: &str) -> Result<(), CommandError> {
    std::fs::write(path, text).map_err(|source| CommandError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { grid_n: 8, ..RunConfig::default() }
    }

    #[test]
    fn default_verify_passes() {
        let report = verify(&small()).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn corrupted_gamma_fails_clifford() {
        let mut m = *GammaSet::dirac().matrices();
        m[2] = m[2].scale(Complex64::new(1.0 + 1e-6, 0.0));
        let report = verify_with_gamma(&small(), &GammaSet::from_matrices(m)).unwrap();
        assert!(!report.all_passed());
        let clifford = report.checks.iter().find(|c| c.name == "clifford").unwrap();
        assert!(!clifford.passed());
    }

    #[test]
    fn small_grid_is_config_error() {
        let cfg = RunConfig { grid_n: 3, ..RunConfig::default() };
        assert!(matches!(verify(&cfg), Err(CommandError::Config(_))));
    }

    #[test]
    fn estimate_zero_field_and_polarized() {
        let cfg = RunConfig { field_tesla: 0.0, ..small() };
        let r = estimate(&cfg).unwrap();
        assert_eq!(r.physical.coefficient, 0.0);
        assert_eq!(r.unit.coefficient, 0.0);
        let cfg = RunConfig { lambda_plus_mag: 1.0, lambda_minus_mag: 0.0, ..small() };
        let r = estimate(&cfg).unwrap();
        assert!(r.physical.coefficient > 0.0);
        assert_eq!(r.physical.value, 0.0);
        assert_eq!(r.unit.value, 0.0);
        assert_eq!(r.csv().lines().count(), 2);
    }

    #[test]
    fn sweep_axis_parsing() {
        assert_eq!("grid_n".parse::<SweepAxis>().unwrap(), SweepAxis::GridN);
        assert!("temperature".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn sweep_values() {
        let s = SweepSpec { axis: SweepAxis::FieldTesla, min: 0.0, max: 1e-5, steps: 2 };
        assert_eq!(s.values(), vec![0.0, 1e-5]);
        let s = SweepSpec { steps: 1, ..s };
        assert_eq!(s.values(), vec![0.0]);
    }

    #[test]
    fn field_sweep_first_row_vanishes() {
        let spec = SweepSpec { axis: SweepAxis::FieldTesla, min: 0.0, max: 1e-5, steps: 2 };
        let csv = sweep(&small(), &spec).unwrap();
        let rows: Vec<Vec<f64>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0][1..].iter().all(|v| *v == 0.0));
        assert!(rows[1][1] != 0.0);
    }

    #[test]
    fn amplitude_split_out_of_range() {
        let spec = SweepSpec { axis: SweepAxis::AmplitudeSplit, min: 0.0, max: 1.5, steps: 2 };
        assert!(matches!(sweep(&small(), &spec), Err(CommandError::Config(_))));
    }
}
