use nalgebra::DMatrix;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Result};

/// `(k-1) × (k-1)`: 2 on the diagonal, 1 elsewhere.
pub fn j_matrix(k: usize) -> DMatrix<f64> {
    let m = k - 1;
    DMatrix::from_fn(m, m, |i, j| if i == j { 2.0 } else { 1.0 })
}

/// The form `H` on the free entries `ε_ij`, `i, j < k-1`, with
/// `Σ H ε ε = ‖ε‖²` once the last row and column are eliminated through the
/// zero row and column sums.
pub fn hessian_h(k: usize) -> Result<DMatrix<f64>> {
    if k < 2 {
        return Err(invalid(format!("k must be >= 2, got {k}")));
    }
    let m = k - 1;
    let dim = m * m;
    let var = |i: usize, j: usize| i * m + j;
    // Coefficient vector of every entry of ε in terms of the free variables.
    let mut entries: Vec<Vec<f64>> = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut c = vec![0.0; dim];
            match (i < m, j < m) {
                (true, true) => c[var(i, j)] = 1.0,
                (true, false) => (0..m).for_each(|b| c[var(i, b)] = -1.0),
                (false, true) => (0..m).for_each(|a| c[var(a, j)] = -1.0),
                (false, false) => c.iter_mut().for_each(|x| *x = 1.0),
            }
            entries.push(c);
        }
    }
    let mut h = DMatrix::zeros(dim, dim);
    for c in &entries {
        for a in 0..dim {
            if c[a] == 0.0 {
                continue;
            }
            for b in 0..dim {
                h[(a, b)] += c[a] * c[b];
            }
        }
    }
    Ok(h)
}

/// `(det H, k^{2(k-1)})`.
pub fn det_check(k: usize) -> Result<(f64, f64)> {
    let h = hessian_h(k)?;
    Ok((h.determinant(), (k as f64).powi(2 * (k as i32 - 1))))
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSum {
    pub sum: f64,
    /// `(2πn)^{dim/2} D^{-dim/2} det(Q)^{-1/2}`.
    pub asymptotic: f64,
    pub points: u64,
    pub cutoff: f64,
    /// Gaussian mass beyond the cutoff, relative to the asymptotic value.
    pub tail_bound: f64,
    pub warning: bool,
}

impl LatticeSum {
    pub fn ratio(&self) -> f64 {
        self.sum / self.asymptotic
    }
}

/// `Σ_{j ∈ Z^dim} exp(-(D / 2n) jᵀQj)` over the ellipsoid
/// `jᵀQj ≤ cutoff² n / D`, enumerated by Fincke–Pohst.
pub fn gaussian_lattice_sum(
    q: &DMatrix<f64>,
    n: usize,
    scale: f64,
    cutoff: f64,
) -> Result<LatticeSum> {
    let dim = q.nrows();
    if dim == 0 || q.ncols() != dim {
        return Err(invalid("quadratic form must be square and nonempty"));
    }
    if !(scale > 0.0) || !(cutoff > 0.0) || n == 0 {
        return Err(invalid("scale, cutoff and n must be positive"));
    }
    let chol = q
        .clone()
        .cholesky()
        .ok_or_else(|| invalid("quadratic form is not positive definite"))?;
    let u = chol.l().transpose();
    let coef = scale / (2.0 * n as f64);
    let radius_sq = cutoff * cutoff / (2.0 * coef);

    struct Walk<'a> {
        u: &'a DMatrix<f64>,
        coef: f64,
        j: Vec<i64>,
        sum: f64,
        points: u64,
    }
    fn descend(w: &mut Walk, i: usize, budget: f64, acc: f64) {
        let dim = w.j.len();
        let uii = w.u[(i, i)];
        let shift: f64 = (i + 1..dim)
            .map(|l| w.u[(i, l)] * w.j[l] as f64)
            .sum::<f64>()
            / uii;
        let centre = -shift;
        let half = (budget.max(0.0)).sqrt() / uii;
        let lo = (centre - half).ceil() as i64;
        let hi = (centre + half).floor() as i64;
        for x in lo..=hi {
            let t = uii * (x as f64 - centre);
            let part = t * t;
            if part > budget {
                continue;
            }
            w.j[i] = x;
            if i == 0 {
                w.sum += (-w.coef * (acc + part)).exp();
                w.points += 1;
            } else {
                descend(w, i - 1, budget - part, acc + part);
            }
        }
        w.j[i] = 0;
    }
    let mut walk = Walk {
        u: &u,
        coef,
        j: vec![0; dim],
        sum: 0.0,
        points: 0,
    };
    descend(&mut walk, dim - 1, radius_sq, 0.0);

    let det = q.determinant();
    let asymptotic = (std::f64::consts::TAU * n as f64 / scale).powf(dim as f64 / 2.0) / det.sqrt();
    let chi = ChiSquared::new(dim as f64).map_err(|e| invalid(e.to_string()))?;
    let tail_bound = chi.sf(cutoff * cutoff);
    Ok(LatticeSum {
        sum: walk.sum,
        asymptotic,
        points: walk.points,
        cutoff,
        tail_bound,
        warning: tail_bound > 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_colours() {
        let h = hessian_h(2).unwrap();
        assert_eq!(h.as_slice(), &[4.0]);
        assert_eq!(det_check(2).unwrap(), (4.0, 4.0));
    }

    #[test]
    fn kronecker_structure() {
        for k in 2..=6 {
            let j = j_matrix(k);
            assert!((hessian_h(k).unwrap() - j.kronecker(&j)).abs().max() < 1e-12);
            assert!((j.determinant() - k as f64).abs() < 1e-9);
        }
        let (det, expected) = det_check(3).unwrap();
        assert!((det - 81.0).abs() < 1e-9 && expected == 81.0);
    }

    #[test]
    fn one_dimensional_sum() {
        let q = DMatrix::from_element(1, 1, 1.0);
        let s = gaussian_lattice_sum(&q, 100, 1.0, 8.0).unwrap();
        // Σ exp(-j²/200) = sqrt(200π) up to exponentially small terms.
        assert!((s.sum - (200.0 * std::f64::consts::PI).sqrt()).abs() < 1e-9);
        assert!(!s.warning);
        assert!(gaussian_lattice_sum(&q, 100, 1.0, 0.5).unwrap().warning);
        assert!(gaussian_lattice_sum(&DMatrix::from_element(1, 1, -1.0), 10, 1.0, 8.0).is_err());
    }
}
