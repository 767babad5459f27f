use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{invalid, LabError, Result};
use crate::scalar::Real;

/// Integer class intersections `|σ⁻¹(i) ∩ τ⁻¹(j)|`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OverlapCounts {
    k: usize,
    n: usize,
    cells: Vec<usize>,
}

impl OverlapCounts {
    pub fn from_cells(k: usize, cells: Vec<usize>) -> Result<Self> {
        if cells.len() != k * k {
            return Err(LabError::LengthMismatch {
                expected: k * k,
                found: cells.len(),
            });
        }
        let n = cells.iter().sum();
        Ok(Self { k, n, cells })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.k + j]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.cells.chunks(self.k).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.k)
            .map(|j| (0..self.k).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn to_matrix<T: Real>(&self) -> OverlapMatrix<T> {
        let n = T::from_usize_lossy(self.n);
        OverlapMatrix {
            k: self.k,
            entries: self
                .cells
                .iter()
                .map(|&c| T::from_usize_lossy(c) / n)
                .collect(),
        }
    }
}

/// Overlap of two colourings of the same vertex set.
pub fn overlap_of(a: &Colouring, b: &Colouring) -> Result<OverlapCounts> {
    if a.n() != b.n() {
        return Err(LabError::LengthMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    if a.k() != b.k() {
        return Err(invalid(format!(
            "colourings use k = {} and k = {}",
            a.k(),
            b.k()
        )));
    }
    let k = a.k();
    let mut cells = vec![0usize; k * k];
    for (&x, &y) in a.as_slice().iter().zip(b.as_slice()) {
        cells[x as usize * k + y as usize] += 1;
    }
    Ok(OverlapCounts { k, n: a.n(), cells })
}

/// `k × k` nonnegative matrix with unit total mass, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapMatrix<T> {
    k: usize,
    entries: Vec<T>,
}

impl<T: Real> OverlapMatrix<T> {
    /// Checks nonnegativity and a unit sum to within `1e-9`.
    pub fn new(k: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != k * k {
            return Err(LabError::LengthMismatch {
                expected: k * k,
                found: entries.len(),
            });
        }
        if entries.iter().any(|&x| x < T::zero() || !x.is_finite()) {
            return Err(invalid("overlap entries must be finite and nonnegative"));
        }
        let total = entries.iter().fold(T::zero(), |a, &x| a + x);
        if (total - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) {
            return Err(invalid(format!("overlap entries sum to {total:?}, not 1")));
        }
        Ok(Self { k, entries })
    }

    /// `ρ̄`: every entry `1/k²`.
    pub fn barycentre(k: usize) -> Self {
        let v = T::one() / T::from_usize_lossy(k * k);
        Self {
            k,
            entries: vec![v; k * k],
        }
    }

    /// `I/k`.
    pub fn identity(k: usize) -> Self {
        let mut entries = vec![T::zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = T::one() / T::from_usize_lossy(k);
        }
        Self { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.k + j]
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.entries
            .chunks(self.k)
            .map(|r| r.iter().fold(T::zero(), |a, &x| a + x))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        (0..self.k)
            .map(|j| (0..self.k).fold(T::zero(), |a, i| a + self.get(i, j)))
            .collect()
    }

    /// `‖ρ‖²` (Frobenius).
    pub fn norm_sq(&self) -> T {
        self.entries.iter().fold(T::zero(), |a, &x| a + x * x)
    }

    /// Simultaneous row and column permutation `ρ_{π(i) π(j)}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.k;
        let mut entries = vec![T::zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                entries[i * k + j] = self.get(perm[i], perm[j]);
            }
        }
        Self { k, entries }
    }
}
