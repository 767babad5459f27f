//! Second moment over overlap matrices.

use super::first::{alpha, c_n, entropy, ln_multinomial, multinomial, ModelParams};
use crate::colouring::{balanced_profiles, compositions};
use crate::error::{invalid, LabError, Result};
use crate::graph::pair_count;
use crate::overlap::OverlapCounts;
use crate::scalar::{Field, Real};

/// Pairs of `K_n` that are monochromatic under `σ` or under `τ`.
fn forbidden(counts: &OverlapCounts) -> u64 {
    let rows: u64 = counts.row_sums().iter().map(|&s| pair_count(s)).sum();
    let cols: u64 = counts.col_sums().iter().map(|&s| pair_count(s)).sum();
    let both: u64 = counts.cells().iter().map(|&s| pair_count(s)).sum();
    rows + cols - both
}

fn check(params: &ModelParams, counts: &OverlapCounts) -> Result<()> {
    if counts.n() != params.n || counts.k() != params.k {
        return Err(invalid(format!(
            "overlap over (n = {}, k = {}) used with model (n = {}, k = {})",
            counts.n(),
            counts.k(),
            params.n,
            params.k
        )));
    }
    if params.n < 2 && params.m > 0 {
        return Err(invalid("edges need n >= 2"));
    }
    Ok(())
}

/// `ln` of `multinomial(n; ρ_ij n) ((N - F)/N)^m`.
pub fn second_moment_exact_ln(params: &ModelParams, counts: &OverlapCounts) -> Result<f64> {
    check(params, counts)?;
    let log_mult = ln_multinomial(params.n, counts.cells());
    if params.m == 0 {
        return Ok(log_mult);
    }
    let n_pairs = params.pairs();
    let f = forbidden(counts);
    if f == n_pairs {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(log_mult + params.m as f64 * (-(f as f64) / n_pairs as f64).ln_1p())
}

pub fn second_moment_exact_in<F: Field>(params: &ModelParams, counts: &OverlapCounts) -> Result<F> {
    check(params, counts)?;
    let mult = F::from_biguint(&multinomial(params.n, counts.cells()));
    if params.m == 0 {
        return Ok(mult);
    }
    let n_pairs = params.pairs();
    Ok(mult * F::ratio(n_pairs - forbidden(counts), n_pairs).pow_u64(params.m as u64))
}

/// `E[Z_k²]`: the identity summed over every `k × k` overlap count matrix.
pub fn second_moment_total_in<F: Field>(params: &ModelParams) -> F {
    let mut acc = F::zero();
    for cells in compositions(params.n, params.k * params.k) {
        let counts = OverlapCounts::from_cells(params.k, cells).expect("square");
        acc = acc + second_moment_exact_in::<F>(params, &counts).expect("matching sizes");
    }
    acc
}

/// `f(ρ) = H(ρ) + (d/2) ln(1 - 2/k + ‖ρ‖²)` over the `k²` entries of `ρ`.
pub fn f_overlap<T: Real>(rho: &[T], d: T, k: usize) -> Result<T> {
    if rho.len() != k * k {
        return Err(LabError::LengthMismatch {
            expected: k * k,
            found: rho.len(),
        });
    }
    let sq = rho.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let arg = T::one() - T::lit(2.0) / T::from_usize_lossy(k) + sq;
    if arg <= T::zero() {
        return Err(LabError::Domain(format!(
            "ln argument {arg:?} is not positive"
        )));
    }
    Ok(entropy(rho) + d / T::lit(2.0) * arg.ln())
}

/// `C_n = e^{d/2} k^{k²} (2πn)^{(1-k²)/2}`.
pub fn big_c_n<T: Real>(d: T, k: usize, n: usize) -> T {
    let kf = T::from_usize_lossy(k);
    let k2 = kf * kf;
    (d / T::lit(2.0)).exp()
        * kf.powf(k2)
        * (T::TAU() * T::from_usize_lossy(n)).powf((T::one() - k2) / T::lit(2.0))
}

/// `D(d,k) = k² (1 - d/(k-1)²)`.
pub fn d_const<T: Real>(d: T, k: usize) -> T {
    let kf = T::from_usize_lossy(k);
    let km1 = kf - T::one();
    kf * kf * (T::one() - d / (km1 * km1))
}

/// `ln` of `(|B| c_n e^{nα})² e^{d/2} (1 - d/(k-1)²)^{-(k-1)²/2}`.
pub fn second_moment_balanced_asymptotic_ln(d: f64, k: usize, n: usize, omega: f64) -> Result<f64> {
    let sq = ((k - 1) * (k - 1)) as f64;
    if d >= sq {
        return Err(LabError::DivergentSeries { d, bound: sq });
    }
    let count = balanced_profiles(n, k, omega).len() as f64;
    let first = count.ln() + c_n::<f64>(k, n).ln() + n as f64 * alpha(d, k);
    Ok(2.0 * first + d / 2.0 - sq / 2.0 * (-d / sq).ln_1p())
}
