//! Classical four-potentials `(A₀, A₁, A₂, A₃)` at fixed time `x₀ = 0`.

use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeBox};
use crate::units::UnitsContext;

/// `(A₀, A₁, A₂, A₃)` in eV.
pub type FourPotential = [f64; 4];

/// `jacobian[μ][b] = ∂A_μ / ∂x_{b+1}`.
pub type PotentialJacobian = [[f64; 3]; 4];

/// A potential known in closed form, with its analytic spatial derivatives.
pub trait Potential: Send + Sync {
    fn value(&self, x: [f64; 3]) -> FourPotential;
    fn jacobian(&self, x: [f64; 3]) -> PotentialJacobian;
}

/// Uniform magnetic field `H` in eV².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantMagneticField {
    pub h: [f64; 3],
}

impl ConstantMagneticField {
    pub fn new(h: [f64; 3]) -> Self {
        Self { h }
    }

    pub fn along_z(h3: f64) -> Self {
        Self { h: [0.0, 0.0, h3] }
    }

    pub fn from_tesla(b: [f64; 3], units: &UnitsContext) -> Self {
        Self {
            h: b.map(|v| units.tesla_to_natural(v)),
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { h: self.h.map(|v| c * v) }
    }
}

/// Symmetric gauge `A = ½ H × x`, `A₀ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricGauge {
    pub field: ConstantMagneticField,
}

impl Potential for SymmetricGauge {
    fn value(&self, x: [f64; 3]) -> FourPotential {
        let h = self.field.h;
        [
            0.0,
            0.5 * (h[1] * x[2] - h[2] * x[1]),
            0.5 * (h[2] * x[0] - h[0] * x[2]),
            0.5 * (h[0] * x[1] - h[1] * x[0]),
        ]
    }

    fn jacobian(&self, _x: [f64; 3]) -> PotentialJacobian {
        let h = self.field.h;
        [
            [0.0; 3],
            [0.0, -0.5 * h[2], 0.5 * h[1]],
            [0.5 * h[2], 0.0, -0.5 * h[0]],
            [-0.5 * h[1], 0.5 * h[0], 0.0],
        ]
    }
}

/// Spatially constant four-potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformPotential(pub FourPotential);

impl Potential for UniformPotential {
    fn value(&self, _x: [f64; 3]) -> FourPotential {
        self.0
    }

    fn jacobian(&self, _x: [f64; 3]) -> PotentialJacobian {
        [[0.0; 3]; 4]
    }
}

struct Scaled {
    inner: Arc<dyn Potential>,
    factor: f64,
}

impl Potential for Scaled {
    fn value(&self, x: [f64; 3]) -> FourPotential {
        self.inner.value(x).map(|v| self.factor * v)
    }

    fn jacobian(&self, x: [f64; 3]) -> PotentialJacobian {
        self.inner.jacobian(x).map(|row| row.map(|v| self.factor * v))
    }
}

/// Potential known only at lattice sites; derivatives come from stencils.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPotential {
    pub lattice: LatticeBox,
    pub values: Vec<FourPotential>,
    pub boundary: Boundary,
}

#[derive(Clone)]
pub enum FieldConfiguration {
    ClosedForm(Arc<dyn Potential>),
    Sampled(SampledPotential),
}

impl fmt::Debug for FieldConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfiguration::ClosedForm(_) => f.write_str("ClosedForm(..)"),
            FieldConfiguration::Sampled(s) => f
                .debug_struct("Sampled")
                .field("lattice", &s.lattice)
                .field("boundary", &s.boundary)
                .finish_non_exhaustive(),
        }
    }
}

impl FieldConfiguration {
    pub fn closed_form<P: Potential + 'static>(p: P) -> Self {
        FieldConfiguration::ClosedForm(Arc::new(p))
    }

    pub fn uniform(a: FourPotential) -> Self {
        Self::closed_form(UniformPotential(a))
    }

    pub fn sampled(
        lattice: LatticeBox,
        values: Vec<FourPotential>,
        boundary: Boundary,
    ) -> Result<Self> {
        lattice.check_len(values.len(), "sampled potential")?;
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("potential samples must be finite".into()));
        }
        Ok(FieldConfiguration::Sampled(SampledPotential {
            lattice,
            values,
            boundary,
        }))
    }

    /// Values at every site of `lattice`.
    pub fn values_on(&self, lattice: &LatticeBox) -> Result<Cow<'_, [FourPotential]>> {
        match self {
            FieldConfiguration::ClosedForm(p) => {
                Ok(Cow::Owned(lattice.map_sites(|_, x| p.value(x))))
            }
            FieldConfiguration::Sampled(s) => {
                s.lattice.check_same(lattice, "potential vs target lattice")?;
                Ok(Cow::Borrowed(&s.values))
            }
        }
    }

    /// Sample a closed-form potential, discarding its analytic derivatives.
    pub fn to_sampled(&self, lattice: &LatticeBox, boundary: Boundary) -> Result<Self> {
        let values = self.values_on(lattice)?.into_owned();
        Self::sampled(*lattice, values, boundary)
    }

    pub fn scaled(&self, c: f64) -> Self {
        match self {
            FieldConfiguration::ClosedForm(p) => FieldConfiguration::ClosedForm(Arc::new(Scaled {
                inner: Arc::clone(p),
                factor: c,
            })),
            FieldConfiguration::Sampled(s) => FieldConfiguration::Sampled(SampledPotential {
                values: s.values.iter().map(|a| a.map(|v| c * v)).collect(),
                ..s.clone()
            }),
        }
    }

    /// Fail unless `A₀` vanishes at every site.
    pub fn require_magnetic(&self, lattice: &LatticeBox) -> Result<()> {
        let values = self.values_on(lattice)?;
        match values.iter().map(|a| a[0]).find(|a0| *a0 != 0.0) {
            Some(a0) => Err(Error::NonzeroScalarPotential(a0)),
            None => Ok(()),
        }
    }
}

/// Closed-form symmetric-gauge potential of a constant field.
pub fn constant_field_potential(field: ConstantMagneticField) -> FieldConfiguration {
    FieldConfiguration::closed_form(SymmetricGauge { field })
}

/// Apparatus-averaged potentials for `H ∥ z`: `(⟨A₁⟩, ⟨A₂⟩) = (−½H₃d, +½H₃d)`.
pub fn average_potential(h3: f64, d: f64) -> Result<(f64, f64)> {
    if d.is_nan() || d <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "apparatus scale must be positive, got {d}"
        )));
    }
    Ok((-0.5 * h3 * d, 0.5 * h3 * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::derivative;
    use num_complex::Complex64;

    #[test]
    fn symmetric_gauge_examples() {
        let g = SymmetricGauge {
            field: ConstantMagneticField::along_z(3.0),
        };
        assert_eq!(g.value([1.0, 0.0, 0.0]), [0.0, 0.0, 1.5, 0.0]);
        let zero = SymmetricGauge {
            field: ConstantMagneticField::new([0.0; 3]),
        };
        assert_eq!(zero.value([4.0, -2.0, 7.0]), [0.0; 4]);
    }

    #[test]
    fn stencil_curl_and_divergence() {
        let h = [0.7, -1.3, 2.1];
        let a = constant_field_potential(ConstantMagneticField::new(h));
        let b = LatticeBox::new([-1.0, 0.5, 2.0], [2.0, 3.0, 1.5], 8).unwrap();
        let vals = a.values_on(&b).unwrap();
        let comp = |mu: usize| -> Vec<Complex64> {
            vals.iter().map(|v| Complex64::new(v[mu], 0.0)).collect()
        };
        // d[mu][axis]
        let d: Vec<Vec<Vec<Complex64>>> = (1..4)
            .map(|mu| {
                (0..3)
                    .map(|ax| derivative(&comp(mu), &b, ax, Boundary::Open).unwrap())
                    .collect()
            })
            .collect();
        for idx in 0..b.site_count() {
            let curl = [
                d[2][1][idx].re - d[1][2][idx].re,
                d[0][2][idx].re - d[2][0][idx].re,
                d[1][0][idx].re - d[0][1][idx].re,
            ];
            for k in 0..3 {
                assert!((curl[k] - h[k]).abs() <= 1e-10, "curl {curl:?}");
            }
            let div = d[0][0][idx].re + d[1][1][idx].re + d[2][2][idx].re;
            assert!(div.abs() <= 1e-10);
        }
    }

    #[test]
    fn analytic_jacobian_matches_curl() {
        let h = [0.4, 0.9, -2.0];
        let g = SymmetricGauge {
            field: ConstantMagneticField::new(h),
        };
        let j = g.jacobian([0.0; 3]);
        let curl = [j[3][1] - j[2][2], j[1][2] - j[3][0], j[2][0] - j[1][1]];
        assert_eq!(curl, h);
        assert_eq!(j[1][0] + j[2][1] + j[3][2], 0.0);
    }

    #[test]
    fn averages() {
        assert_eq!(average_potential(0.0, 2.0).unwrap(), (-0.0, 0.0));
        assert_eq!(average_potential(4.0, 0.5).unwrap(), (-1.0, 1.0));
        assert_eq!(average_potential(-4.0, 0.5).unwrap(), (1.0, -1.0));
        assert!(average_potential(1.0, 0.0).is_err());
    }

    #[test]
    fn magnetic_requirement() {
        let b = LatticeBox::cornered_cube(1.0, 4).unwrap();
        assert!(FieldConfiguration::uniform([0.0, 1.0, 2.0, 3.0])
            .require_magnetic(&b)
            .is_ok());
        assert_eq!(
            FieldConfiguration::uniform([0.5, 1.0, 2.0, 3.0]).require_magnetic(&b),
            Err(Error::NonzeroScalarPotential(0.5))
        );
    }

    #[test]
    fn sampled_lattice_mismatch() {
        let b = LatticeBox::cornered_cube(1.0, 4).unwrap();
        let other = LatticeBox::cornered_cube(1.0, 5).unwrap();
        let s = FieldConfiguration::uniform([0.0, 1.0, 0.0, 0.0])
            .to_sampled(&b, Boundary::Open)
            .unwrap();
        assert!(matches!(s.values_on(&other), Err(Error::LatticeMismatch(_))));
    }

    proptest::proptest! {
        #[test]
        fn symmetric_gauge_is_linear(
            h in proptest::array::uniform3(-5.0f64..5.0),
            x in proptest::array::uniform3(-5.0f64..5.0),
            lambda in -4.0f64..4.0,
        ) {
            let g = SymmetricGauge { field: ConstantMagneticField::new(h) };
            let a = g.value(x);
            let b = g.value(x.map(|v| lambda * v));
            for mu in 0..4 {
                proptest::prop_assert!((b[mu] - lambda * a[mu]).abs() <= 1e-12 * (1.0 + a[mu].abs() * lambda.abs()));
            }
        }
    }
}
