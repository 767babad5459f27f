//! Fluctuations of the number of colourings: conditioning on short cycles,
//! the limit law `W`, and concentration of `ln Z`.

use colourlab_core::colouring::{count_colourings_with, BalanceParams, BalancedCounter, CountLimits};
use colourlab_core::cycles::{count_isolated_triangles, cycle_census};
use colourlab_core::graph::{sample_gnm_multigraph, Graph};
use colourlab_core::moments::{
    conditioned_ratio, delta, first_moment_balanced_ln, first_moment_total_ln, lambda, ModelParams,
};
use colourlab_core::scalar::fits_u128;
use colourlab_core::{BigCount, LabError, RandomSource, Result};
use statrs::distribution::{Discrete, Poisson};

use crate::record::{Check, ExperimentRecord, Params};
use crate::stats::{correlation, ks_distance, linear_fit, quantile, sorted, summarize};
use crate::w::WSampler;

/// Relative tolerance for conditioned ratios.
pub const RATIO_REL_TOL: f64 = 0.10;
/// Fewest conditioning hits accepted.
pub const MIN_HITS: u64 = 30;
/// Largest accepted Kolmogorov–Smirnov distance at the final `n`.
pub const KS_FINAL_MAX: f64 = 0.1;
/// Allowed deviation of the regression slope from 1.
pub const SLOPE_TOL: f64 = 0.15;
/// Standard errors allowed for `E[W] = 1`.
pub const W_MEAN_Z: f64 = 3.0;

/// `ω = ln n`, the default balance parameter.
pub fn default_omega(n: usize) -> f64 {
    (n as f64).ln()
}

/// Exact `Z_{k,ω}` with `u128` when `k^n` fits and an `f64` tally otherwise.
pub enum ZCounter {
    Exact(BalancedCounter<u128>),
    Float(BalancedCounter<f64>),
}

impl ZCounter {
    pub fn new(n: usize, k: usize, omega: f64) -> Result<Self> {
        let params = BalanceParams::new(omega)?;
        let limits = CountLimits::unbounded_components();
        Ok(if fits_u128(k, n) {
            Self::Exact(BalancedCounter::new(n, k, &params, limits)?)
        } else {
            Self::Float(BalancedCounter::new(n, k, &params, limits)?)
        })
    }

    pub fn tally_name(&self) -> &'static str {
        match self {
            Self::Exact(_) => "u128",
            Self::Float(_) => "f64",
        }
    }

    pub fn count(&mut self, g: &Graph) -> Result<f64> {
        match self {
            Self::Exact(c) => Ok(c.count(g)? as f64),
            Self::Float(c) => c.count(g),
        }
    }
}

/// `ln Z_k(G)`, `-inf` when `G` is not `k`-colourable.
pub fn ln_total_count(g: &Graph, k: usize) -> Result<f64> {
    let limits = CountLimits::unbounded_components();
    if fits_u128(k, g.n()) {
        Ok((count_colourings_with::<u128>(g, k, &limits)? as f64).ln())
    } else {
        Ok(count_colourings_with::<f64>(g, k, &limits)?.ln())
    }
}

/// Monte-Carlo `E[Z_{k,ω} | C_l = x_l, l <= L] / E[Z_{k,ω}]` over `𝒢(n,m)`,
/// with exact per-sample counts and the exact unconditional expectation.
/// `x[0]` is `x_2`; an empty `x` conditions on nothing.
///
/// Each `ω'` in `sensitivity` gets its own ratio from the same graphs, reported
/// as a statistic.
#[allow(clippy::too_many_arguments)]
pub fn exp_conditioned_ratio(
    n: usize,
    d: f64,
    k: usize,
    omega: f64,
    x: &[u64],
    trials: u64,
    seed: u64,
    sensitivity: &[f64],
) -> Result<ExperimentRecord> {
    if trials == 0 {
        return Err(LabError::InvalidParameter("trials must be >= 1".into()));
    }
    let params = ModelParams::from_d(n, d, k)?;
    let mut rec = ExperimentRecord::new(
        "conditioned_ratio",
        Params {
            n: Some(n),
            m: Some(params.m),
            d: Some(d),
            k: Some(k),
            omega: Some(omega),
            max_len: Some(x.len() + 1),
            x: Some(x.to_vec()),
            trials: Some(trials),
            seed: Some(seed),
            ..Params::default()
        },
    );
    let mut counter = ZCounter::new(n, k, omega)?;
    let ln_mean = first_moment_balanced_ln(&params, omega);
    let mean = ln_mean.exp();
    let mut others = sensitivity
        .iter()
        .map(|&om| Ok((ZCounter::new(n, k, om)?, first_moment_balanced_ln(&params, om).exp(), 0.0)))
        .collect::<Result<Vec<(ZCounter, f64, f64)>>>()?;
    let src = RandomSource::new(seed, 0);
    let mut hit_values = Vec::new();
    let mut all_sum = 0.0;
    for t in 0..trials {
        let g = sample_gnm_multigraph(n, params.m, src.derive(t))?;
        let z = counter.count(&g)? / mean;
        all_sum += z;
        let hit = x.is_empty() || cycle_census(&g, x.len() + 1)?.counts() == x;
        if hit {
            hit_values.push(z);
            for (c, m, sum) in others.iter_mut() {
                *sum += c.count(&g)? / *m;
            }
        }
    }
    let hits = hit_values.len() as u64;
    if hits < MIN_HITS.min(trials) {
        return Err(LabError::InsufficientSamples(format!(
            "{hits} of {trials} trials matched the census prefix, need {MIN_HITS}"
        )));
    }
    let s = summarize(&hit_values);
    let reference: f64 = conditioned_ratio(x, d, k);
    rec.stat("tally", counter.tally_name());
    rec.stat_f64("ln_expected_z", ln_mean);
    rec.stat("hits", hits);
    rec.stat_f64("hit_fraction", hits as f64 / trials as f64);
    let poisson_prob: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &xl)| Poisson::new(lambda(i as u32 + 2, d)).map(|p| p.pmf(xl)).unwrap_or(f64::NAN))
        .product();
    rec.stat_f64("poisson_prefix_probability", poisson_prob);
    rec.stat_f64("ratio_se", s.se);
    rec.stat_f64("ratio_with_sampled_denominator", s.mean / (all_sum / trials as f64));
    rec.check(Check::rel("ratio", s.mean, reference, RATIO_REL_TOL));
    if !sensitivity.is_empty() {
        let ratios: Vec<f64> = others.iter().map(|(_, _, sum)| sum / hits as f64).collect();
        rec.stat_vec("sensitivity_omega", sensitivity);
        rec.stat_vec("sensitivity_ratio", &ratios);
    }
    rec.note("denominator is the exact E[Z_{k,omega}] over the multigraph model");
    Ok(rec)
}

/// Kolmogorov–Smirnov distance between `Z_{k,ω}/E[Z_{k,ω}]` and `W` for each
/// `n`, plus the Monte-Carlo check `E[W] = 1`. `omega = None` uses `ln n`.
#[allow(clippy::too_many_arguments)]
pub fn exp_limit_distribution(
    n_list: &[usize],
    d: f64,
    k: usize,
    omega: Option<f64>,
    trials: u64,
    w_trials: u64,
    eps_tail: f64,
    seed: u64,
) -> Result<ExperimentRecord> {
    if trials == 0 || w_trials < 2 || n_list.is_empty() {
        return Err(LabError::InvalidParameter("need trials >= 1, w_trials >= 2 and some n".into()));
    }
    let sampler = WSampler::new(d, k, eps_tail)?;
    let mut rec = ExperimentRecord::new(
        "limit_distribution",
        Params {
            n_list: Some(n_list.to_vec()),
            d: Some(d),
            k: Some(k),
            omega,
            trials: Some(trials),
            w_trials: Some(w_trials),
            eps_tail: Some(eps_tail),
            seed: Some(seed),
            ..Params::default()
        },
    );
    let mut rng = RandomSource::new(seed, u64::MAX).rng();
    let w: Vec<f64> = (0..w_trials).map(|_| sampler.sample(&mut rng).value).collect();
    let ws = summarize(&w);
    rec.stat("l_trunc", sampler.l_trunc());
    rec.stat_f64("tail_bound", sampler.tail_bound());
    rec.stat_f64("w_variance", ws.var);
    rec.check(Check::within_se("mean_W", ws.mean, 1.0, ws.se, W_MEAN_Z));

    let mut ks = Vec::with_capacity(n_list.len());
    let mut omegas = Vec::with_capacity(n_list.len());
    let mut means = Vec::with_capacity(n_list.len());
    let mut ks_total = Vec::with_capacity(n_list.len());
    for (i, &n) in n_list.iter().enumerate() {
        let om = omega.unwrap_or_else(|| default_omega(n));
        let params = ModelParams::from_d(n, d, k)?;
        let mean = first_moment_balanced_ln(&params, om).exp();
        let mut counter = ZCounter::new(n, k, om)?;
        let src = RandomSource::new(seed, i as u64);
        let ln_total_mean = first_moment_total_ln(&params);
        let mut ratios = Vec::with_capacity(trials as usize);
        let mut unrestricted = Vec::with_capacity(trials as usize);
        for t in 0..trials {
            let g = sample_gnm_multigraph(n, params.m, src.derive(t))?;
            ratios.push(counter.count(&g)? / mean);
            unrestricted.push((ln_total_count(&g, k)? - ln_total_mean).exp());
        }
        omegas.push(om);
        means.push(summarize(&ratios).mean);
        ks.push(ks_distance(&ratios, &w));
        ks_total.push(ks_distance(&unrestricted, &w));
    }
    rec.stat_vec("omega_per_n", &omegas);
    rec.stat_vec("mean_ratio_per_n", &means);
    rec.stat_vec("ks_distance", &ks);
    rec.stat_vec("ks_distance_all_colourings", &ks_total);
    if omega.is_none() {
        rec.note("omega = ln n at each n");
    }
    rec.check(Check::holds("ks_decreasing", ks.windows(2).all(|w| w[1] < w[0])));
    rec.check(Check::at_most("ks_final", *ks.last().unwrap(), KS_FINAL_MAX));
    Ok(rec)
}

/// Spread of `ln Z_k - ln E[Z_k]` across `n`, its dependence on short cycles,
/// and the exact effect of grafting isolated triangles.
pub fn exp_concentration(
    n_list: &[usize],
    d: f64,
    k: usize,
    max_len: usize,
    trials: u64,
    seed: u64,
) -> Result<ExperimentRecord> {
    if trials < 3 || n_list.is_empty() || max_len < 2 {
        return Err(LabError::InvalidParameter("need trials >= 3, L >= 2 and some n".into()));
    }
    let mut rec = ExperimentRecord::new(
        "concentration",
        Params {
            n_list: Some(n_list.to_vec()),
            d: Some(d),
            k: Some(k),
            max_len: Some(max_len),
            trials: Some(trials),
            seed: Some(seed),
            ..Params::default()
        },
    );
    rec.note("model is the multigraph G(n,m) with its exact E[Z_k]; no simple-event filter");
    rec.note("spread across n is a qualitative check");
    let weights: Vec<f64> = (2..=max_len as u32).map(|l| delta::<f64>(l, k).ln_1p()).collect();
    let mut iqrs = Vec::new();
    let mut last = (Vec::new(), Vec::new(), Vec::new());
    let mut base = None;
    for (i, &n) in n_list.iter().enumerate() {
        let params = ModelParams::from_d(n, d, k)?;
        let ln_mean = first_moment_total_ln(&params);
        let src = RandomSource::new(seed, i as u64);
        let (mut resid, mut predicted, mut triangles) = (Vec::new(), Vec::new(), Vec::new());
        let mut uncolourable = 0u64;
        for t in 0..trials {
            let g = sample_gnm_multigraph(n, params.m, src.derive(t))?;
            let ln_z = ln_total_count(&g, k)?;
            if ln_z == f64::NEG_INFINITY {
                uncolourable += 1;
                continue;
            }
            let census = cycle_census(&g, max_len)?;
            resid.push(ln_z - ln_mean);
            predicted.push(census.counts().iter().zip(&weights).map(|(&x, w)| x as f64 * w).sum());
            triangles.push(count_isolated_triangles(&g) as f64);
            if base.is_none() {
                base = Some(g);
            }
        }
        let q = sorted(&resid);
        let (q1, q2, q3) = (quantile(&q, 0.25), quantile(&q, 0.5), quantile(&q, 0.75));
        rec.stat_vec(&format!("quartiles_n{n}"), &[q1, q2, q3]);
        rec.stat(&format!("uncolourable_n{n}"), uncolourable);
        iqrs.push(q3 - q1);
        last = (resid, predicted, triangles);
    }
    rec.stat_vec("iqr_per_n", &iqrs);
    rec.check(Check::info("iqr_last_over_first", iqrs[iqrs.len() - 1] / iqrs[0], 1.0));

    let (resid, predicted, triangles) = last;
    rec.check(Check::info("corr_isolated_triangles_ln_z", correlation(&triangles, &resid), 0.0));
    let fit = linear_fit(&predicted, &resid);
    rec.stat_f64("slope_se", fit.slope_se);
    rec.stat_f64("intercept", fit.intercept);
    let drift: f64 = (2..=max_len as u32).map(|l| lambda::<f64>(l, d) * delta::<f64>(l, k)).sum();
    rec.stat_f64("predicted_intercept", -drift);
    rec.check(Check::abs("slope", fit.slope, 1.0, SLOPE_TOL));
    let resid_sd = summarize(&resid).var.sqrt();
    rec.stat_f64("residual_sd", resid_sd);

    if let Some(g) = base {
        rec.check(Check::holds("triangle_grafting_exact", grafting_is_exact(&g, k, 3)?));
    }
    Ok(rec)
}

/// `Z_k(G ⊔ t K_3) = Z_k(G) (k(k-1)(k-2))^t` for `t = 1..=max_t`, exactly.
pub fn grafting_is_exact(g: &Graph, k: usize, max_t: u32) -> Result<bool> {
    let limits = CountLimits::unbounded_components();
    let base: BigCount = count_colourings_with(g, k, &limits)?;
    let factor = BigCount::from((k * k.saturating_sub(1) * k.saturating_sub(2)) as u64);
    let mut grafted = g.clone();
    let mut expected = base;
    for _ in 0..max_t {
        grafted = grafted.disjoint_union(&Graph::complete(3));
        expected *= &factor;
        let z: BigCount = count_colourings_with(&grafted, k, &limits)?;
        if z != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
