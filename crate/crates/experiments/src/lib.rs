//! Seeded verification experiments for k-colourings of random graphs.
//!
//! Each experiment is a pure function of its parameters and seed and returns
//! an [`ExperimentRecord`] carrying statistics, reference values and
//! pass/fail checks against fixed tolerances. Trial `t` of an experiment draws
//! from `RandomSource::new(seed, stream).derive(t)`, so records are
//! byte-identical across reruns.

pub mod conditioning;
pub mod cycle_laws;
pub mod enumeration;
pub mod record;
pub mod stats;
pub mod w;

pub use conditioning::{exp_concentration, exp_conditioned_ratio, exp_limit_distribution};
pub use cycle_laws::{exp_planted_cycles, exp_poisson_cycles};
pub use enumeration::{exp_cluster_tiny, exp_contiguity_enum};
pub use record::{Check, ExperimentRecord, Params, Rule, Verdict};
pub use w::{sample_w, WSample, WSampler};

use colourlab_core::{LabError, Result};

pub const EXPERIMENTS: [&str; 7] = [
    "poisson_cycles",
    "planted_cycles",
    "conditioned_ratio",
    "limit_distribution",
    "concentration",
    "contiguity_enum",
    "cluster_tiny",
];

/// Loosely typed experiment request; unset fields take per-experiment
/// defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub n: Option<usize>,
    pub n_list: Option<Vec<usize>>,
    pub m: Option<usize>,
    pub d: Option<f64>,
    pub k: Option<usize>,
    pub omega: Option<f64>,
    pub max_len: Option<usize>,
    pub x: Option<Vec<u64>>,
    pub trials: Option<u64>,
    pub w_trials: Option<u64>,
    pub eps_tail: Option<f64>,
    pub events: Option<usize>,
    /// Extra `ω` values for the conditioned ratio; `None` means
    /// `{1, ln n, √ln n}`.
    pub sensitivity: Option<Vec<f64>>,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(name: &str, seed: u64) -> Self {
        Self { name: name.to_string(), seed, ..Self::default() }
    }

    /// Average degree: `d` if given, else `2m/n`, else `default`.
    fn degree(&self, n: usize, default: f64) -> f64 {
        match (self.d, self.m) {
            (Some(d), _) => d,
            (None, Some(m)) => 2.0 * m as f64 / n as f64,
            _ => default,
        }
    }

    /// Edge count: `m` if given, else `⌈dn/2⌉`, else `default`.
    fn edges(&self, n: usize, default: usize) -> usize {
        match (self.m, self.d) {
            (Some(m), _) => m,
            (None, Some(d)) => (d * n as f64 / 2.0 * (1.0 - 1e-12)).ceil() as usize,
            _ => default,
        }
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRecord> {
    let seed = cfg.seed;
    match cfg.name.as_str() {
        "poisson_cycles" => {
            let n = cfg.n.unwrap_or(1000);
            exp_poisson_cycles(
                n,
                cfg.degree(n, 2.0),
                cfg.k.unwrap_or(3),
                cfg.max_len.unwrap_or(3),
                cfg.trials.unwrap_or(10_000),
                seed,
            )
        }
        "planted_cycles" => {
            let n = cfg.n.unwrap_or(999);
            let sweep = cfg.n_list.clone().unwrap_or_else(|| vec![250, 500, 1000]);
            exp_planted_cycles(
                n,
                cfg.degree(n, 2.0),
                cfg.k.unwrap_or(3),
                cfg.max_len.unwrap_or(3),
                cfg.trials.unwrap_or(10_000),
                seed,
                &sweep,
            )
        }
        "conditioned_ratio" => {
            let n = cfg.n.unwrap_or(60);
            let ln_n = (n as f64).ln();
            let sensitivity = cfg.sensitivity.clone().unwrap_or_else(|| vec![1.0, ln_n, ln_n.sqrt()]);
            exp_conditioned_ratio(
                n,
                cfg.degree(n, 1.0),
                cfg.k.unwrap_or(3),
                cfg.omega.unwrap_or_else(|| conditioning::default_omega(n)),
                cfg.x.as_deref().unwrap_or(&[0]),
                cfg.trials.unwrap_or(100_000),
                seed,
                &sensitivity,
            )
        }
        "limit_distribution" => {
            let ns = cfg.n_list.clone().unwrap_or_else(|| vec![30, 60, 120]);
            exp_limit_distribution(
                &ns,
                cfg.degree(ns[0], 1.0),
                cfg.k.unwrap_or(3),
                cfg.omega,
                cfg.trials.unwrap_or(20_000),
                cfg.w_trials.unwrap_or(1_000_000),
                cfg.eps_tail.unwrap_or(1e-6),
                seed,
            )
        }
        "concentration" => {
            let ns = cfg.n_list.clone().unwrap_or_else(|| vec![30, 60, 120]);
            exp_concentration(
                &ns,
                cfg.degree(ns[0], 1.0),
                cfg.k.unwrap_or(3),
                cfg.max_len.unwrap_or(8),
                cfg.trials.unwrap_or(2000),
                seed,
            )
        }
        "contiguity_enum" => {
            let n = cfg.n.unwrap_or(5);
            exp_contiguity_enum(
                n,
                cfg.edges(n, 5),
                cfg.k.unwrap_or(3),
                cfg.events.unwrap_or(enumeration::DEFAULT_EVENTS),
                seed,
            )
        }
        "cluster_tiny" => {
            let n = cfg.n.unwrap_or(6);
            exp_cluster_tiny(
                n,
                cfg.edges(n, 4),
                cfg.k.unwrap_or(3),
                cfg.omega.unwrap_or(1.0),
                cfg.trials.unwrap_or(10),
                seed,
            )
        }
        other => Err(LabError::InvalidParameter(format!(
            "unknown experiment {other:?}; expected one of {}",
            EXPERIMENTS.join(", ")
        ))),
    }
}
