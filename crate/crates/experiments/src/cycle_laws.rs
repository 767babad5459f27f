//! Poisson laws for short cycle counts, in the null and the planted model.

use colourlab_core::colouring::Colouring;
use colourlab_core::cycles::{cycle_census, has_intersecting_cycles};
use colourlab_core::graph::{sample_bichromatic_multigraph, sample_gnm_multigraph};
use colourlab_core::moments::{lambda, mu, ModelParams};
use colourlab_core::{LabError, RandomSource, Result};
use statrs::distribution::{Discrete, DiscreteCDF, Poisson};

use crate::record::{Check, ExperimentRecord, Params};
use crate::stats::{chi_square_gof, correlation, summarize};

/// Standard errors allowed for sample means.
pub const MEAN_Z: f64 = 3.0;
/// Smallest accepted chi-square p-value.
pub const CHI_SQUARE_P_MIN: f64 = 1e-3;

/// Product grid of cells `{0, …, c_l - 1, ≥ c_l}` per coordinate.
struct JointBins {
    caps: Vec<usize>,
    probs: Vec<f64>,
}

impl JointBins {
    fn new(rates: &[f64], trials: u64) -> Self {
        let mut caps = Vec::with_capacity(rates.len());
        let mut marginals = Vec::with_capacity(rates.len());
        for &r in rates {
            let law = Poisson::new(r).expect("positive rate");
            // Open the last cell where fewer than one observation is expected beyond it.
            let mut c = 1;
            while (1.0 - law.cdf(c as u64 - 1)) * trials as f64 >= 1.0 && c < 60 {
                c += 1;
            }
            let mut p: Vec<f64> = (0..c).map(|j| law.pmf(j as u64)).collect();
            p.push((1.0 - p.iter().sum::<f64>()).max(0.0));
            caps.push(c);
            marginals.push(p);
        }
        let mut probs = vec![1.0];
        for p in marginals.iter().rev() {
            probs = p.iter().flat_map(|&a| probs.iter().map(move |&b| a * b)).collect();
        }
        Self { caps, probs }
    }

    fn cell(&self, counts: &[u64]) -> usize {
        let mut idx = 0;
        for (&x, &c) in counts.iter().zip(&self.caps) {
            idx = idx * (c + 1) + (x as usize).min(c);
        }
        idx
    }
}

/// Per-length mean checks and the joint chi-square against independent
/// Poisson laws with the given rates.
fn compare_to_poisson(rec: &mut ExperimentRecord, samples: &[Vec<u64>], rates: &[f64], label: &str) {
    let trials = samples.len() as u64;
    for (i, &rate) in rates.iter().enumerate() {
        let l = i + 2;
        let xs: Vec<f64> = samples.iter().map(|s| s[i] as f64).collect();
        let s = summarize(&xs);
        rec.check(Check::within_se(&format!("mean_C{l}"), s.mean, rate, s.se, MEAN_Z));
        rec.check(Check::info(&format!("var_C{l}"), s.var, rate));
    }
    if rates.iter().any(|&r| r <= 0.0) {
        rec.check(Check::holds("all_counts_zero", samples.iter().all(|s| s.iter().all(|&x| x == 0))));
        return;
    }
    for i in 0..rates.len() {
        for j in i + 1..rates.len() {
            let xi: Vec<f64> = samples.iter().map(|s| s[i] as f64).collect();
            let xj: Vec<f64> = samples.iter().map(|s| s[j] as f64).collect();
            let r = correlation(&xi, &xj);
            rec.check(Check::within_se(
                &format!("corr_C{}_C{}", i + 2, j + 2),
                r,
                0.0,
                1.0 / (trials as f64).sqrt(),
                MEAN_Z,
            ));
        }
    }
    let bins = JointBins::new(rates, trials);
    let mut observed = vec![0u64; bins.probs.len()];
    for s in samples {
        observed[bins.cell(s)] += 1;
    }
    let t = chi_square_gof(&observed, &bins.probs);
    rec.stat_f64("chi_square_statistic", t.statistic);
    rec.stat("chi_square_dof", t.dof);
    rec.stat("chi_square_cells", t.cells);
    rec.check(Check::at_least("chi_square_p", t.p_value, CHI_SQUARE_P_MIN));
    rec.note(format!("joint histogram compared with independent Po({label})"));
}

fn censuses(
    trials: u64,
    max_len: usize,
    mut sample: impl FnMut(u64) -> Result<colourlab_core::graph::Graph>,
) -> Result<Vec<Vec<u64>>> {
    (0..trials).map(|t| Ok(cycle_census(&sample(t)?, max_len)?.counts().to_vec())).collect()
}

fn check_trials(trials: u64, max_len: usize) -> Result<()> {
    if trials == 0 {
        return Err(LabError::InvalidParameter("trials must be >= 1".into()));
    }
    if max_len < 2 {
        return Err(LabError::InvalidParameter(format!("L must be >= 2, got {max_len}")));
    }
    Ok(())
}

/// Cycle counts of `𝒢(n,m)` against independent `Po(λ_l)`.
pub fn exp_poisson_cycles(n: usize, d: f64, k: usize, max_len: usize, trials: u64, seed: u64) -> Result<ExperimentRecord> {
    check_trials(trials, max_len)?;
    let params = ModelParams::from_d(n, d, k.max(2))?;
    let mut rec = ExperimentRecord::new(
        "poisson_cycles",
        Params {
            n: Some(n),
            m: Some(params.m),
            d: Some(d),
            k: Some(k),
            max_len: Some(max_len),
            trials: Some(trials),
            seed: Some(seed),
            ..Params::default()
        },
    );
    let src = RandomSource::new(seed, 0);
    let samples = censuses(trials, max_len, |t| sample_gnm_multigraph(n, params.m, src.derive(t)))?;
    let rates: Vec<f64> = (2..=max_len as u32).map(|l| lambda(l, d)).collect();
    rec.stat_vec("lambda", &rates);
    compare_to_poisson(&mut rec, &samples, &rates, "lambda_l");
    Ok(rec)
}

/// `σ(v) = v mod k`: class sizes differ by at most one.
pub fn balanced_colouring(n: usize, k: usize) -> Result<Colouring> {
    Colouring::new(k, (0..n).map(|v| (v % k) as u32).collect())
}

/// Cycle counts of `𝒢(n,m)` given that a balanced `σ` is proper, against
/// independent `Po(μ_l)`; also the frequency of vertex-intersecting short
/// cycles over `sweep`.
pub fn exp_planted_cycles(
    n: usize,
    d: f64,
    k: usize,
    max_len: usize,
    trials: u64,
    seed: u64,
    sweep: &[usize],
) -> Result<ExperimentRecord> {
    check_trials(trials, max_len)?;
    let params = ModelParams::from_d(n, d, k)?;
    let mut rec = ExperimentRecord::new(
        "planted_cycles",
        Params {
            n: Some(n),
            n_list: (!sweep.is_empty()).then(|| sweep.to_vec()),
            m: Some(params.m),
            d: Some(d),
            k: Some(k),
            max_len: Some(max_len),
            trials: Some(trials),
            seed: Some(seed),
            ..Params::default()
        },
    );
    for &size in std::iter::once(&n).chain(sweep) {
        if size % k != 0 {
            rec.note(format!("n = {size} is not divisible by k = {k}; class sizes differ by one"));
        }
    }
    let sigma = balanced_colouring(n, k)?;
    let src = RandomSource::new(seed, 0);
    let samples = censuses(trials, max_len, |t| sample_bichromatic_multigraph(&sigma, params.m, src.derive(t)))?;
    let rates: Vec<f64> = (2..=max_len as u32).map(|l| mu(l, d, k)).collect();
    rec.stat_vec("mu", &rates);
    compare_to_poisson(&mut rec, &samples, &rates, "mu_l");

    if !sweep.is_empty() {
        let mut freqs = Vec::with_capacity(sweep.len());
        for (i, &size) in sweep.iter().enumerate() {
            let m = ModelParams::from_d(size, d, k)?.m;
            let sigma = balanced_colouring(size, k)?;
            let src = RandomSource::new(seed, 1 + i as u64);
            let mut hits = 0u64;
            for t in 0..trials {
                let g = sample_bichromatic_multigraph(&sigma, m, src.derive(t))?;
                hits += has_intersecting_cycles(&g, max_len)? as u64;
            }
            freqs.push(hits as f64 / trials as f64);
        }
        let scaled: Vec<f64> = freqs.iter().zip(sweep).map(|(f, &s)| f * s as f64).collect();
        rec.stat_vec("intersecting_frequency", &freqs);
        rec.stat_vec("intersecting_frequency_times_n", &scaled);
        let decreasing = freqs.windows(2).all(|w| w[1] < w[0]);
        rec.check(Check::holds("intersecting_frequency_decreasing", decreasing));
    }
    Ok(rec)
}
