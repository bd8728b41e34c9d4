//! Dense complex 4x4 algebra and the Dirac matrices in the standard representation.
//!
//! Index conventions: Lorentz indices run over `0..=3`, spatial axes over `1..=3`.
//! The metric is `diag(+1, -1, -1, -1)`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Four complex components of a Dirac spinor.
pub type Spinor = [Complex64; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub const fn zero() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Assemble from 2x2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: [[Complex64; 2]; 2],
        b: [[Complex64; 2]; 2],
        c: [[Complex64; 2]; 2],
        d: [[Complex64; 2]; 2],
    ) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for s in 0..2 {
                m.0[r][s] = a[r][s];
                m.0[r][s + 2] = b[r][s];
                m.0[r + 2][s] = c[r][s];
                m.0[r + 2][s + 2] = d[r][s];
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = self.0[c][r].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    /// `a† M b`.
    pub fn sandwich(&self, a: &Spinor, b: &Spinor) -> Complex64 {
        let mb = self.apply(b);
        a.iter().zip(mb.iter()).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.0[r][c]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.0[r][c] += rhs.0[r][c];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.0[r][c] -= rhs.0[r][c];
            }
        }
        self
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        m
    }
}

impl Mul<Complex64> for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

/// Pauli matrices `σ_x`, `σ_y`, `σ_z`.
pub fn pauli() -> [[[Complex64; 2]; 2]; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

/// Minkowski metric component `g^{μν}`.
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

/// Totally antisymmetric symbol on spatial axes `1..=3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// The four Dirac matrices `γ^μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSet {
    gamma: [ComplexMatrix4; 4],
}

impl GammaSet {
    /// Standard (Dirac) representation: `γ⁰ = diag(1, 1, -1, -1)`,
    /// `γ^i = [[0, σ_i], [-σ_i, 0]]`.
    pub fn dirac() -> Self {
        let z = [[ZERO; 2]; 2];
        let id = [[ONE, ZERO], [ZERO, ONE]];
        let neg_id = [[-ONE, ZERO], [ZERO, -ONE]];
        let p = pauli();
        let neg = |m: [[Complex64; 2]; 2]| m.map(|row| row.map(|v| -v));
        Self {
            gamma: [
                ComplexMatrix4::from_blocks(id, z, z, neg_id),
                ComplexMatrix4::from_blocks(z, p[0], neg(p[0]), z),
                ComplexMatrix4::from_blocks(z, p[1], neg(p[1]), z),
                ComplexMatrix4::from_blocks(z, p[2], neg(p[2]), z),
            ],
        }
    }

    /// Build from arbitrary matrices. No algebraic check is made; callers use
    /// [`GammaSet::clifford_residual`] to validate.
    pub fn from_matrices(gamma: [ComplexMatrix4; 4]) -> Self {
        Self { gamma }
    }

    pub fn gamma(&self, mu: usize) -> Result<&ComplexMatrix4> {
        self.gamma.get(mu).ok_or(Error::IndexOutOfRange(mu))
    }

    pub fn matrices(&self) -> &[ComplexMatrix4; 4] {
        &self.gamma
    }

    /// `σ_ab = i γ^a γ^b`.
    pub fn sigma(&self, a: usize, b: usize) -> Result<ComplexMatrix4> {
        Ok((*self.gamma(a)? * *self.gamma(b)?).scale(I))
    }

    /// Spin component `½σ_jk` with `(i, j, k)` cyclic in `(1, 2, 3)`.
    pub fn spin_operator(&self, axis: usize) -> Result<ComplexMatrix4> {
        let (j, k) = match axis {
            1 => (2, 3),
            2 => (3, 1),
            3 => (1, 2),
            other => return Err(Error::AxisOutOfRange(other)),
        };
        Ok(self.sigma(j, k)?.scale(Complex64::new(0.5, 0.0)))
    }

    pub fn spin_operators(&self) -> SpinOperators {
        let mut sigma = [[ComplexMatrix4::zero(); 4]; 4];
        for (a, row) in sigma.iter_mut().enumerate() {
            for (b, s) in row.iter_mut().enumerate() {
                *s = (self.gamma[a] * self.gamma[b]).scale(I);
            }
        }
        let half = Complex64::new(0.5, 0.0);
        SpinOperators {
            sigma,
            spin: [
                sigma[2][3].scale(half),
                sigma[3][1].scale(half),
                sigma[1][2].scale(half),
            ],
        }
    }

    /// Largest entry of `{γ^μ, γ^ν} - 2 g^{μν} I` over all 16 index pairs.
    pub fn clifford_residual(&self) -> f64 {
        let id = ComplexMatrix4::identity();
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let target = id.scale(Complex64::new(2.0 * metric(mu, nu), 0.0));
                let r = (self.gamma[mu].anticommutator(&self.gamma[nu]) - target).max_abs();
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Largest deviation from `γ⁰† = γ⁰`, `γ^i† = -γ^i`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = (self.gamma[0].adjoint() - self.gamma[0]).max_abs();
        for g in &self.gamma[1..] {
            worst = worst.max((g.adjoint() + *g).max_abs());
        }
        worst
    }

    /// `Σ_μ γ^μ k_μ` for contravariant `(E, k)`, i.e. `γ⁰E − γ·k`.
    pub fn slash(&self, energy: f64, k: [f64; 3]) -> ComplexMatrix4 {
        let mut m = self.gamma[0].scale(Complex64::new(energy, 0.0));
        for (i, ki) in k.iter().enumerate() {
            m = m - self.gamma[i + 1].scale(Complex64::new(*ki, 0.0));
        }
        m
    }
}

/// All `σ_ab` plus the three spin components `(½σ₂₃, ½σ₃₁, ½σ₁₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperators {
    pub sigma: [[ComplexMatrix4; 4]; 4],
    pub spin: [ComplexMatrix4; 3],
}

impl SpinOperators {
    /// Largest deviation from `[S_i, S_j] = i ε_ijk S_k`.
    pub fn commutator_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 1..=3 {
            for j in 1..=3 {
                let lhs = self.spin[i - 1].commutator(&self.spin[j - 1]);
                let mut rhs = ComplexMatrix4::zero();
                for k in 1..=3 {
                    let e = levi_civita(i, j, k);
                    if e != 0.0 {
                        rhs = rhs + self.spin[k - 1].scale(Complex64::new(0.0, e));
                    }
                }
                worst = worst.max((lhs - rhs).max_abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn clifford_and_hermiticity() {
        let g = GammaSet::dirac();
        assert!(g.clifford_residual() <= 1e-12);
        assert!(g.hermiticity_residual() <= 1e-12);
        for m in g.matrices() {
            assert!(m.trace().norm() <= 1e-12);
        }
    }

    #[test]
    fn clifford_examples() {
        let g = GammaSet::dirac();
        let g0 = *g.gamma(0).unwrap();
        let g1 = *g.gamma(1).unwrap();
        let g2 = *g.gamma(2).unwrap();
        assert_eq!(g0 * g0, ComplexMatrix4::identity());
        assert!(g1.anticommutator(&g2).max_abs() == 0.0);
        assert!((g0 * g1 * g0 + g1).max_abs() == 0.0);
    }

    #[test]
    fn sigma_12_is_pauli_z_on_both_blocks() {
        let g = GammaSet::dirac();
        let s = g.sigma(1, 2).unwrap();
        let expected = ComplexMatrix4::diagonal([c(1.0), c(-1.0), c(1.0), c(-1.0)]);
        assert!((s - expected).max_abs() <= 1e-15);
        assert!((s.adjoint() - s).max_abs() <= 1e-15);
    }

    #[test]
    fn sigma_diagonal_pair() {
        // i γ¹γ¹ = i g¹¹ I = -i I
        let g = GammaSet::dirac();
        let s = g.sigma(1, 1).unwrap();
        let expected = ComplexMatrix4::identity().scale(Complex64::new(0.0, -1.0));
        assert!((s - expected).max_abs() <= 1e-15);
    }

    #[test]
    fn index_errors() {
        let g = GammaSet::dirac();
        assert_eq!(g.sigma(4, 0), Err(Error::IndexOutOfRange(4)));
        assert_eq!(g.spin_operator(0), Err(Error::AxisOutOfRange(0)));
        assert_eq!(g.spin_operator(4), Err(Error::AxisOutOfRange(4)));
    }

    #[test]
    fn spin_operator_spectrum() {
        let g = GammaSet::dirac();
        let s3 = g.spin_operator(3).unwrap();
        let expected = ComplexMatrix4::diagonal([c(0.5), c(-0.5), c(0.5), c(-0.5)]);
        assert!((s3 - expected).max_abs() <= 1e-15);
        // Hermitian, S² = ¼ I and traceless: eigenvalues ±½, each twice.
        for axis in 1..=3 {
            let s = g.spin_operator(axis).unwrap();
            assert!((s.adjoint() - s).max_abs() <= 1e-15);
            let quarter = ComplexMatrix4::identity().scale(c(0.25));
            assert!((s * s - quarter).max_abs() <= 1e-15);
            assert!(s.trace().norm() <= 1e-15);
        }
    }

    #[test]
    fn spin_algebra() {
        let ops = GammaSet::dirac().spin_operators();
        assert!(ops.commutator_residual() <= 1e-12);
        let lhs = ops.spin[0].commutator(&ops.spin[1]);
        let rhs = ops.spin[2].scale(I);
        assert!((lhs - rhs).max_abs() <= 1e-15);
    }

    #[test]
    fn adjoint_of_product() {
        let g = GammaSet::dirac();
        let a = *g.gamma(1).unwrap() + g.sigma(0, 2).unwrap().scale(Complex64::new(0.3, -1.1));
        let b = g.sigma(3, 1).unwrap() * *g.gamma(0).unwrap();
        assert!(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() <= 1e-14);
    }

    #[test]
    fn levi_civita_symbol() {
        assert_eq!(levi_civita(1, 2, 3), 1.0);
        assert_eq!(levi_civita(2, 1, 3), -1.0);
        assert_eq!(levi_civita(1, 1, 3), 0.0);
    }
}
