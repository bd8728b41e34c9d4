//! Uniform cell-centred lattice, deterministic quadrature and central-difference stencils.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Below this length pairwise reduction falls back to a straight loop.
const PAIRWISE_BLOCK: usize = 64;
/// Above this length the two halves of a reduction run on separate workers.
const PARALLEL_SPLIT: usize = 1 << 14;

/// Periodic box with `n` cells per axis; sites sit at cell centres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBox {
    origin: [f64; 3],
    extents: [f64; 3],
    n: usize,
}

/// How a stencil treats the faces of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Wrap around; correct for fields that are periodic on the box.
    Periodic,
    /// Second-order one-sided differences on the first and last planes.
    Open,
}

impl LatticeBox {
    pub fn new(origin: [f64; 3], extents: [f64; 3], n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter(format!(
                "points per axis must be >= 4, got {n}"
            )));
        }
        if extents.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "box extents must be positive and finite, got {extents:?}"
            )));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidParameter("box origin must be finite".into()));
        }
        Ok(Self { origin, extents, n })
    }

    /// Cube `[0, d]³`, cornered at the origin.
    pub fn cornered_cube(d: f64, n: usize) -> Result<Self> {
        Self::new([0.0; 3], [d; 3], n)
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn extents(&self) -> [f64; 3] {
        self.extents
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.extents.map(|e| e / self.n as f64)
    }

    pub fn site_count(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn volume(&self) -> f64 {
        self.extents.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().iter().product()
    }

    /// Row-major flat index, axis 1 slowest.
    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n + i[1]) * self.n + i[2]
    }

    pub fn multi_index(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let m = self.multi_index(idx);
        let h = self.spacing();
        [0, 1, 2].map(|a| self.origin[a] + (m[a] as f64 + 0.5) * h[a])
    }

    /// Evaluate `f(position)` at every site, in site order.
    pub fn map_sites<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, [f64; 3]) -> T + Sync + Send,
    {
        (0..self.site_count())
            .into_par_iter()
            .map(|idx| f(idx, self.position(idx)))
            .collect()
    }

    pub fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len == self.site_count() {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(format!(
                "{what} has {len} samples, lattice has {} sites",
                self.site_count()
            )))
        }
    }

    pub fn check_same(&self, other: &LatticeBox, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(format!("{what}: {self:?} vs {other:?}")))
        }
    }
}

/// Pairwise (tree) summation. The split points depend only on the length,
/// so the result is independent of the worker count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    if values.len() >= PARALLEL_SPLIT {
        let (a, b) = rayon::join(|| pairwise_sum(lo), || pairwise_sum(hi));
        a + b
    } else {
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    if values.len() >= PARALLEL_SPLIT {
        let (a, b) = rayon::join(|| pairwise_sum_complex(lo), || pairwise_sum_complex(hi));
        a + b
    } else {
        pairwise_sum_complex(lo) + pairwise_sum_complex(hi)
    }
}

/// Periodic midpoint rule: cell volume times the sum of the samples.
pub fn integrate_scalar(f: &[f64], lattice: &LatticeBox) -> Result<f64> {
    lattice.check_len(f.len(), "scalar field")?;
    Ok(lattice.cell_volume() * pairwise_sum(f))
}

pub fn integrate_complex(f: &[Complex64], lattice: &LatticeBox) -> Result<Complex64> {
    lattice.check_len(f.len(), "complex field")?;
    Ok(pairwise_sum_complex(f) * lattice.cell_volume())
}

/// Partial derivative along `axis` (0-based) by second-order central differences.
pub fn derivative(
    f: &[Complex64],
    lattice: &LatticeBox,
    axis: usize,
    boundary: Boundary,
) -> Result<Vec<Complex64>> {
    lattice.check_len(f.len(), "stencil input")?;
    if axis > 2 {
        return Err(Error::AxisOutOfRange(axis + 1));
    }
    let n = lattice.points_per_axis();
    let inv_2h = 1.0 / (2.0 * lattice.spacing()[axis]);
    Ok((0..lattice.site_count())
        .into_par_iter()
        .map(|idx| {
            let m = lattice.multi_index(idx);
            let at = |p: usize| {
                let mut q = m;
                q[axis] = p;
                f[lattice.index(q)]
            };
            let p = m[axis];
            match boundary {
                Boundary::Periodic => (at((p + 1) % n) - at((p + n - 1) % n)) * inv_2h,
                Boundary::Open if p == 0 => (at(1) * 4.0 - at(0) * 3.0 - at(2)) * inv_2h,
                Boundary::Open if p == n - 1 => {
                    (at(n - 1) * 3.0 - at(n - 2) * 4.0 + at(n - 3)) * inv_2h
                }
                Boundary::Open => (at(p + 1) - at(p - 1)) * inv_2h,
            }
        })
        .collect())
}
