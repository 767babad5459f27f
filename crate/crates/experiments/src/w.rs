//! The limiting variable `W = Π_{l>=2} (1+δ_l)^{X_l} exp(-λ_l δ_l)` with
//! independent `X_l ~ Po(λ_l)`.

use colourlab_core::moments::{delta, lambda};
use colourlab_core::{LabError, Result};
use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WSample {
    pub value: f64,
    pub l_trunc: u32,
    pub tail_bound: f64,
}

/// Rates above this are drawn from `N(λ, λ)`; the Poisson sampler has an upper
/// limit on `λ` and the relative skew is below `1e-6` here.
const NORMAL_RATE: f64 = 1e12;

#[derive(Debug, Clone)]
enum Law {
    Poisson(Poisson<f64>),
    Normal(Normal<f64>),
}

impl Law {
    fn new(rate: f64) -> Self {
        if rate > NORMAL_RATE {
            Law::Normal(Normal::new(rate, rate.sqrt()).expect("finite rate"))
        } else {
            Law::Poisson(Poisson::new(rate).expect("positive rate"))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Law::Poisson(p) => p.sample(rng),
            Law::Normal(n) => n.sample(rng),
        }
    }
}

#[derive(Debug, Clone)]
struct Factor {
    law: Law,
    /// `ln(1+δ_l)`, `-inf` when `δ_l = -1`.
    ln_base: f64,
    lambda_delta: f64,
}

/// Truncated sampler for `W`; the truncation is fixed at construction.
#[derive(Debug, Clone)]
pub struct WSampler {
    l_trunc: u32,
    tail_bound: f64,
    factors: Vec<Factor>,
}

/// Tail error of truncating after `L`:
/// `|Σ_{l>L} λ_l (ln(1+δ_l) - δ_l)| + 3 sqrt(Σ_{l>L} λ_l ln²(1+δ_l))`.
/// Factors with `δ_l = -1` (odd `l` at `k = 2`) instead contribute `λ_l`, the
/// first-order chance that one of them vanishes.
pub fn tail_bound(d: f64, k: usize, l_trunc: u32) -> f64 {
    let mut drift = 0.0;
    let mut var = 0.0;
    let mut atoms = 0.0;
    let mut l = l_trunc + 1;
    loop {
        let lam: f64 = lambda(l, d);
        let del: f64 = delta(l, k);
        let (a, b, c) = if del == -1.0 {
            (0.0, 0.0, lam)
        } else {
            let lb = del.ln_1p();
            (lam * (lb - del), lam * lb * lb, 0.0)
        };
        drift += a;
        var += b;
        atoms += c;
        if (a.abs() + b + c) < 1e-20 * (1.0 + drift.abs() + var + atoms) || l > 100_000 {
            break;
        }
        l += 1;
    }
    drift.abs() + 3.0 * var.sqrt() + atoms
}

impl WSampler {
    pub fn new(d: f64, k: usize, eps_tail: f64) -> Result<Self> {
        if k < 2 {
            return Err(LabError::InvalidParameter(format!("k must be >= 2, got {k}")));
        }
        let bound = ((k - 1) * (k - 1)) as f64;
        if !(d < bound) {
            return Err(LabError::DivergentSeries { d, bound });
        }
        if !(d > 0.0) || !(eps_tail > 0.0) {
            return Err(LabError::InvalidParameter("need d > 0 and eps_tail > 0".into()));
        }
        let mut l_trunc = 2;
        let mut tail = tail_bound(d, k, l_trunc);
        while tail >= eps_tail {
            l_trunc += 1;
            tail = tail_bound(d, k, l_trunc);
            if l_trunc > 100_000 {
                return Err(LabError::ResourceLimit("W truncation beyond 10^5 factors".into()));
            }
        }
        let factors = (2..=l_trunc)
            .map(|l| {
                let lam: f64 = lambda(l, d);
                let del: f64 = delta(l, k);
                Factor {
                    law: Law::new(lam),
                    ln_base: if del == -1.0 { f64::NEG_INFINITY } else { del.ln_1p() },
                    lambda_delta: lam * del,
                }
            })
            .collect();
        Ok(Self { l_trunc, tail_bound: tail, factors })
    }

    pub fn l_trunc(&self) -> u32 {
        self.l_trunc
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WSample {
        let mut ln_w = 0.0;
        let mut zero = false;
        for f in &self.factors {
            let x = f.law.sample(rng);
            if x > 0.0 {
                if f.ln_base == f64::NEG_INFINITY {
                    zero = true;
                } else {
                    ln_w += x * f.ln_base;
                }
            }
            ln_w -= f.lambda_delta;
        }
        WSample {
            value: if zero { 0.0 } else { ln_w.exp() },
            l_trunc: self.l_trunc,
            tail_bound: self.tail_bound,
        }
    }
}

pub fn sample_w<R: Rng + ?Sized>(d: f64, k: usize, eps_tail: f64, rng: &mut R) -> Result<WSample> {
    Ok(WSampler::new(d, k, eps_tail)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use colourlab_core::RandomSource;

    #[test]
    fn tail_decreases() {
        let mut prev = f64::INFINITY;
        for l in 2..30 {
            let t = tail_bound(1.0, 3, l);
            assert!(t < prev);
            prev = t;
        }
    }

    #[test]
    fn divergent_and_bad_inputs() {
        assert!(matches!(WSampler::new(4.0, 3, 1e-6), Err(LabError::DivergentSeries { .. })));
        assert!(WSampler::new(1.0, 1, 1e-6).is_err());
        assert!(WSampler::new(1.0, 3, 0.0).is_err());
    }

    #[test]
    fn positive_for_k_at_least_three() {
        let s = WSampler::new(2.0, 3, 1e-8).unwrap();
        let mut rng = RandomSource::new(1, 0).rng();
        assert!((0..1000).all(|_| s.sample(&mut rng).value > 0.0));
        assert!(s.tail_bound() < 1e-8);
    }

    #[test]
    fn two_colours_can_vanish() {
        // An odd cycle kills every 2-colouring.
        let s = WSampler::new(0.9, 2, 1e-6).unwrap();
        let mut rng = RandomSource::new(2, 0).rng();
        assert!((0..2000).any(|_| s.sample(&mut rng).value == 0.0));
    }

    #[test]
    fn huge_rates() {
        // λ_l = 8^l/(2l) passes the Poisson sampler's limit before the tail is small.
        let s = WSampler::new(8.0, 5, 1e-6).unwrap();
        let mut rng = RandomSource::new(4, 0).rng();
        assert!((0..100).all(|_| s.sample(&mut rng).value.is_finite()));
    }

    #[test]
    fn many_colours_concentrate() {
        let s = WSampler::new(1.0, 100, 1e-9).unwrap();
        let mut rng = RandomSource::new(3, 0).rng();
        let logs: Vec<f64> = (0..20_000).map(|_| s.sample(&mut rng).value.ln()).collect();
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        let var = logs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (logs.len() - 1) as f64;
        assert!(var < 1e-3, "{var}");
    }
}
