//! Small subgraph conditioning constants.

use serde::Serialize;

use crate::error::{invalid, LabError, Result};
use crate::scalar::Real;

/// `λ_l = d^l / (2l)`.
pub fn lambda<T: Real>(l: u32, d: T) -> T {
    d.powi(l as i32) / T::from_usize_lossy(2 * l as usize)
}

/// `δ_l = (-1)^l / (k-1)^{l-1}`.
pub fn delta<T: Real>(l: u32, k: usize) -> T {
    let sign = if l % 2 == 0 { T::one() } else { -T::one() };
    sign / T::from_usize_lossy(k - 1).powi(l as i32 - 1)
}

/// `μ_l = λ_l (1 + δ_l)`.
pub fn mu<T: Real>(l: u32, d: T, k: usize) -> T {
    lambda(l, d) * (T::one() + delta::<T>(l, k))
}

/// `λ_l, δ_l, μ_l` for `l = 2..=L`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SscConstants {
    pub lambda: Vec<f64>,
    pub delta: Vec<f64>,
    pub mu: Vec<f64>,
}

impl SscConstants {
    pub fn new(d: f64, k: usize, max_len: u32) -> Result<Self> {
        if k < 2 || max_len < 2 {
            return Err(invalid(format!(
                "need k >= 2 and L >= 2 (k = {k}, L = {max_len})"
            )));
        }
        let ls = 2..=max_len;
        Ok(Self {
            lambda: ls.clone().map(|l| lambda(l, d)).collect(),
            delta: ls.clone().map(|l| delta(l, k)).collect(),
            mu: ls.map(|l| mu(l, d, k)).collect(),
        })
    }
}

fn check_convergent(d: f64, k: usize) -> Result<f64> {
    let bound = ((k - 1) * (k - 1)) as f64;
    if k < 2 || d >= bound || !(d >= 0.0) {
        return Err(LabError::DivergentSeries { d, bound });
    }
    Ok(bound)
}

/// `Σ_{l≥2} λ_l δ_l² = ((k-1)²/2) [-ln(1-x) - x]` with `x = d/(k-1)²`.
pub fn ssc_closed_form(d: f64, k: usize) -> Result<f64> {
    let bound = check_convergent(d, k)?;
    let x = d / bound;
    Ok(bound / 2.0 * (-(-x).ln_1p() - x))
}

/// The closed form together with the truncated series used to check it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCheck {
    pub closed_form: f64,
    pub partial_sum: f64,
    pub terms: u32,
    /// Upper bound on the omitted tail.
    pub tail_bound: f64,
}

/// Sums `λ_l δ_l²` until the next term drops below `tol / 100` and the
/// geometric tail bound below `tol`.
pub fn ssc_series(d: f64, k: usize, tol: f64) -> Result<SeriesCheck> {
    let bound = check_convergent(d, k)?;
    let x = d / bound;
    let scale = bound / 2.0;
    let mut sum = 0.0;
    let mut l = 2u32;
    let mut power = x * x;
    loop {
        sum += scale * power / l as f64;
        power *= x;
        let next = scale * power / (l + 1) as f64;
        let tail = next / (1.0 - x);
        if next < tol * 1e-2 && tail < tol {
            return Ok(SeriesCheck {
                closed_form: ssc_closed_form(d, k)?,
                partial_sum: sum,
                terms: l - 1,
                tail_bound: tail,
            });
        }
        l += 1;
        if l > 1_000_000 {
            return Err(LabError::ResourceLimit(
                "series did not reach tolerance in 10^6 terms".into(),
            ));
        }
    }
}

/// `Π_{l=2}^{L} (1+δ_l)^{x_l} exp(-δ_l λ_l)`, with `x[0] = x_2`.
pub fn conditioned_ratio<T: Real>(x: &[u64], d: T, k: usize) -> T {
    let mut acc = T::one();
    for (i, &xl) in x.iter().enumerate() {
        let l = i as u32 + 2;
        let dl: T = delta(l, k);
        let base = T::one() + dl;
        let factor = if xl == 0 {
            T::one()
        } else {
            base.powi(xl as i32)
        };
        acc = acc * factor * (-dl * lambda(l, d)).exp();
    }
    acc
}
