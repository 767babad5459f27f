use serde::{Deserialize, Serialize};

use super::OverlapMatrix;
use crate::error::{LabError, Result};
use crate::moments::f_overlap;
use crate::scalar::Real;

/// `c_{d,k} = (2(k-1) ln(k-1) - d) / (4(k-1)²)`.
pub fn an_constant<T: Real>(d: T, k: usize) -> T {
    let km1 = T::from_usize_lossy(k - 1);
    (T::lit(2.0) * km1 * km1.ln() - d) / (T::lit(4.0) * km1 * km1)
}

/// `f(ρ̄) - f(ρ) - c_{d,k} (k² ‖ρ‖² - 1)` for `ρ` with all marginals `1/k`.
///
/// Inputs whose marginals miss `1/k` by more than `1e-9` are rejected.
pub fn achlioptas_naor_gap<T: Real>(rho: &OverlapMatrix<T>, d: T) -> Result<T> {
    let k = rho.k();
    let target = T::one() / T::from_usize_lossy(k);
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
    let worst = rho
        .row_sums()
        .into_iter()
        .chain(rho.col_sums())
        .map(|s| (s - target).abs())
        .fold(T::zero(), T::max);
    if worst > tol {
        return Err(LabError::Domain(format!(
            "marginals deviate from 1/k by {worst:?}"
        )));
    }
    let kf = T::from_usize_lossy(k);
    let bar = f_overlap(OverlapMatrix::<T>::barycentre(k).as_slice(), d, k)?;
    let here = f_overlap(rho.as_slice(), d, k)?;
    Ok(bar - here - an_constant(d, k) * (kf * kf * rho.norm_sq() - T::one()))
}

/// `κ = ln²⁰ k / k`.
pub fn kappa(k: usize) -> f64 {
    (k as f64).ln().powi(20) / k as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityClass {
    /// Entries of `kρ` in `(0.51, 1]`.
    pub s: usize,
    /// No entry of `kρ` in `(0.51, 1 - κ)`.
    pub separable: bool,
}

pub fn classify_stability<T: Real>(rho: &OverlapMatrix<T>) -> StabilityClass {
    classify_stability_with_kappa(rho, kappa(rho.k()))
}

/// The same predicates with an explicit `κ`.
pub fn classify_stability_with_kappa<T: Real>(
    rho: &OverlapMatrix<T>,
    kappa: f64,
) -> StabilityClass {
    let kf = rho.k() as f64;
    let scaled: Vec<f64> = rho
        .as_slice()
        .iter()
        .map(|x| kf * x.to_f64().unwrap_or(f64::NAN))
        .collect();
    StabilityClass {
        s: scaled.iter().filter(|&&x| x > 0.51 && x <= 1.0).count(),
        separable: !scaled.iter().any(|&x| x > 0.51 && x < 1.0 - kappa),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_vanishes_at_barycentre() {
        for k in 3..6 {
            let g = achlioptas_naor_gap(&OverlapMatrix::<f64>::barycentre(k), 2.0).unwrap();
            assert!(g.abs() < 1e-14);
        }
        let skew = OverlapMatrix::new(2, vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(
            achlioptas_naor_gap(&skew, 1.0),
            Err(LabError::Domain(_))
        ));
    }

    #[test]
    fn constant_vanishes_at_the_boundary_degree() {
        let k = 4;
        let d = 2.0 * 3.0 * 3f64.ln();
        assert!(an_constant(d, k).abs() < 1e-15);
    }

    #[test]
    fn stability_examples() {
        let bar = classify_stability(&OverlapMatrix::<f64>::barycentre(3));
        assert_eq!(
            bar,
            StabilityClass {
                s: 0,
                separable: true
            }
        );
        for k in [3, 5, 8] {
            let id = classify_stability(&OverlapMatrix::<f64>::identity(k));
            assert_eq!(
                id,
                StabilityClass {
                    s: k,
                    separable: true
                }
            );
        }
        // kρ = 0.7 in one cell.
        let k = 30usize;
        let mut e = vec![0.0; k * k];
        e[0] = 0.7 / k as f64;
        e[1] = 1.0 - e[0];
        let m = OverlapMatrix::new(k, e).unwrap();
        let kap = kappa(k);
        assert!((kap - 30f64.ln().powi(20) / 30.0).abs() <= 1e-6 * kap);
        // κ exceeds 1 here, so (0.51, 1 - κ) is empty.
        assert!(1.0 - kap < 0.51);
        assert!(classify_stability(&m).separable);
        // With a small κ the same entry is inside the excluded window.
        assert!(!classify_stability_with_kappa(&m, 0.1).separable);
    }
}
