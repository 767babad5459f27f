//! First moment of the number of colourings in the with-replacement model.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use super::LogSum;
use crate::colouring::{balanced_profiles, compositions, ColourDensity};
use crate::error::{invalid, LabError, Result};
use crate::graph::pair_count;
use crate::scalar::{Field, Real};

/// `(n, m, k, d)` with `m = ⌈dn/2⌉` when built from `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub d: f64,
}

impl ModelParams {
    pub fn from_d(n: usize, d: f64, k: usize) -> Result<Self> {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(invalid(format!(
                "average degree must be finite and >= 0, got {d}"
            )));
        }
        let raw = d * n as f64 / 2.0;
        // Absorb representation error so that exact products are not bumped up.
        let m = (raw * (1.0 - 1e-12)).ceil().max(0.0) as usize;
        Self::check(n, k)?;
        Ok(Self { n, m, k, d })
    }

    /// Explicit `m`; `d` is recorded as `2m/n`.
    pub fn from_m(n: usize, m: usize, k: usize) -> Result<Self> {
        Self::check(n, k)?;
        Ok(Self {
            n,
            m,
            k,
            d: 2.0 * m as f64 / n as f64,
        })
    }

    fn check(n: usize, k: usize) -> Result<()> {
        if n == 0 || k < 2 {
            return Err(invalid(format!(
                "need n >= 1 and k >= 2 (n = {n}, k = {k})"
            )));
        }
        Ok(())
    }

    pub fn pairs(&self) -> u64 {
        pair_count(self.n)
    }
}

/// `n! / Π parts_i!`
pub fn multinomial(n: usize, parts: &[usize]) -> BigUint {
    let mut acc = BigUint::one();
    let mut rest = n;
    for &p in parts {
        // C(rest, p), built incrementally so every step is integral.
        let mut c = BigUint::one();
        for j in 0..p {
            c = c * BigUint::from(rest - j) / BigUint::from(j + 1);
        }
        acc *= c;
        rest -= p;
    }
    acc
}

pub fn ln_multinomial(n: usize, parts: &[usize]) -> f64 {
    ln_factorial(n as u64) - parts.iter().map(|&p| ln_factorial(p as u64)).sum::<f64>()
}

fn check_density(params: &ModelParams, rho: &ColourDensity) -> Result<()> {
    if rho.n() != params.n || rho.k() != params.k {
        return Err(invalid(format!(
            "density over (n = {}, k = {}) used with model (n = {}, k = {})",
            rho.n(),
            rho.k(),
            params.n,
            params.k
        )));
    }
    if params.n < 2 && params.m > 0 {
        return Err(invalid("edges need n >= 2"));
    }
    Ok(())
}

/// `ln` of `multinomial(n; ρn) (1 - Σ C(ρ_i n, 2) / N)^m`.
pub fn first_moment_exact_ln(params: &ModelParams, rho: &ColourDensity) -> Result<f64> {
    check_density(params, rho)?;
    Ok(first_ln_unchecked(params, rho.sizes()))
}

fn first_ln_unchecked(params: &ModelParams, sizes: &[usize]) -> f64 {
    let forb: u64 = sizes.iter().map(|&s| pair_count(s)).sum();
    let log_mult = ln_multinomial(params.n, sizes);
    if params.m == 0 {
        return log_mult;
    }
    let n_pairs = params.pairs();
    if forb == n_pairs {
        return f64::NEG_INFINITY;
    }
    log_mult + params.m as f64 * (-(forb as f64) / n_pairs as f64).ln_1p()
}

/// The same identity in an arbitrary field.
pub fn first_moment_exact_in<F: Field>(params: &ModelParams, rho: &ColourDensity) -> Result<F> {
    check_density(params, rho)?;
    Ok(first_in_unchecked(params, rho.sizes()))
}

fn first_in_unchecked<F: Field>(params: &ModelParams, sizes: &[usize]) -> F {
    let mult = F::from_biguint(&multinomial(params.n, sizes));
    if params.m == 0 {
        return mult;
    }
    let n_pairs = params.pairs();
    let forb: u64 = sizes.iter().map(|&s| pair_count(s)).sum();
    mult * F::ratio(n_pairs - forb, n_pairs).pow_u64(params.m as u64)
}

/// `ln E[Z_k]`: the exact identity summed over all of `C_k(n)`.
pub fn first_moment_total_ln(params: &ModelParams) -> f64 {
    let mut acc = LogSum::new();
    for_each_composition(params.n, params.k, &mut |sizes| {
        acc.push(first_ln_unchecked(params, sizes))
    });
    acc.value()
}

pub fn first_moment_total_in<F: Field>(params: &ModelParams) -> F {
    compositions(params.n, params.k)
        .iter()
        .fold(F::zero(), |acc, s| acc + first_in_unchecked::<F>(params, s))
}

/// `ln E[Z_k(G(n,m))]` for the uniform simple graph:
/// `Σ_σ C(N - Forb(σ), m) / C(N, m)`.
pub fn first_moment_total_simple_ln(params: &ModelParams) -> Result<f64> {
    let n_pairs = params.pairs();
    if params.m as u64 > n_pairs {
        return Err(invalid(format!(
            "m = {} exceeds C(n,2) = {n_pairs}",
            params.m
        )));
    }
    let m = params.m as u64;
    let ln_binom = |a: u64| ln_factorial(a) - ln_factorial(m) - ln_factorial(a - m);
    let base = ln_binom(n_pairs);
    let mut acc = LogSum::new();
    for_each_composition(params.n, params.k, &mut |sizes| {
        let free = n_pairs - sizes.iter().map(|&s| pair_count(s)).sum::<u64>();
        if free >= m {
            acc.push(ln_multinomial(params.n, sizes) + ln_binom(free) - base);
        }
    });
    Ok(acc.value())
}

/// `ln E[Z_{k,ω}]`, summed over the balanced densities.
pub fn first_moment_balanced_ln(params: &ModelParams, omega: f64) -> f64 {
    let mut acc = LogSum::new();
    for sizes in balanced_profiles(params.n, params.k, omega) {
        acc.push(first_ln_unchecked(params, &sizes));
    }
    acc.value()
}

fn for_each_composition(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(rest: usize, slot: usize, cur: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            f(cur);
            return;
        }
        for x in 0..=rest {
            cur[slot] = x;
            rec(rest - x, slot + 1, cur, f);
        }
    }
    let mut cur = vec![0; k];
    rec(n, 0, &mut cur, f);
}

/// The set `B_{n,k}(ω)` of balanced colour densities.
pub fn enumerate_balanced_densities(n: usize, k: usize, omega: f64) -> Vec<ColourDensity> {
    balanced_profiles(n, k, omega)
        .into_iter()
        .map(|s| ColourDensity::from_sizes(s).expect("nonempty profile"))
        .collect()
}

/// Shannon entropy with `0 ln 0 = 0`.
pub fn entropy<T: Real>(p: &[T]) -> T {
    p.iter().fold(T::zero(), |acc, &x| {
        if x > T::zero() {
            acc - x * x.ln()
        } else {
            acc
        }
    })
}

/// `g(ρ) = H(ρ) + (d/2) ln(1 - Σ ρ_i²)`.
pub fn g_density<T: Real>(rho: &[T], d: T) -> Result<T> {
    let sq = rho.iter().fold(T::zero(), |acc, &x| acc + x * x);
    if sq >= T::one() {
        return Err(LabError::Domain(format!(
            "Σρ² = {sq:?} leaves no bichromatic mass"
        )));
    }
    Ok(entropy(rho) + d / T::lit(2.0) * (T::one() - sq).ln())
}

/// `α(d,k) = ln k + (d/2) ln(1 - 1/k)`.
pub fn alpha<T: Real>(d: T, k: usize) -> T {
    let kf = T::from_usize_lossy(k);
    kf.ln() + d / T::lit(2.0) * (T::one() - kf.recip()).ln()
}

/// `c_n(d,k) = (2πn)^{(1-k)/2} k^{k/2}`.
pub fn c_n<T: Real>(k: usize, n: usize) -> T {
    let kf = T::from_usize_lossy(k);
    let two_pi_n = T::TAU() * T::from_usize_lossy(n);
    two_pi_n.powf((T::one() - kf) / T::lit(2.0)) * kf.powf(kf / T::lit(2.0))
}

/// `B(d,k) = k (1 + d/(k-1))`.
pub fn b_const<T: Real>(d: T, k: usize) -> T {
    let kf = T::from_usize_lossy(k);
    kf * (T::one() + d / (kf - T::one()))
}

/// Asymptotic `ln E[Z_{k,ρ}] ≈ ln c_n + d/2 + n g(ρ)` for `ρ` near `ρ*`.
pub fn first_moment_density_asymptotic_ln(rho: &[f64], d: f64, n: usize) -> Result<f64> {
    Ok(c_n::<f64>(rho.len(), n).ln() + d / 2.0 + n as f64 * g_density(rho, d)?)
}

/// `ln E[Z_k] ≈ d/2 + nα(d,k) - ((k-1)/2) ln(1 + d/(k-1))`.
pub fn first_moment_total_asymptotic_ln(d: f64, k: usize, n: usize) -> f64 {
    let km1 = (k - 1) as f64;
    d / 2.0 + n as f64 * alpha(d, k) - km1 / 2.0 * (d / km1).ln_1p()
}

/// `|B_{n,k}(ω)| k^{k/2} (2πn)^{-(k-1)/2} (1 + d/(k-1))^{(k-1)/2}`.
pub fn balanced_ratio_asymptotic(d: f64, k: usize, n: usize, omega: f64) -> f64 {
    let count = balanced_profiles(n, k, omega).len() as f64;
    let km1 = (k - 1) as f64;
    count * c_n::<f64>(k, n) * (1.0 + d / km1).powf(km1 / 2.0)
}

/// `E[Z_{k,ω}] / E[Z_k]` from the exact sums.
pub fn balanced_ratio_exact(params: &ModelParams, omega: f64) -> f64 {
    (first_moment_balanced_ln(params, omega) - first_moment_total_ln(params)).exp()
}
