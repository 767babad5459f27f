//! Numerical maximisation of `f` over overlap matrices.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use super::OverlapMatrix;
use crate::error::{invalid, Result};
use crate::moments::f_overlap;
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// All nonnegative `k × k` matrices of unit mass.
    Full,
    /// Those with every row and column summing to `1/k`.
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizeOptions {
    pub starts: usize,
    /// Stop once a step moves the iterate by less than this (sup norm).
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Local maxima within this of `f(ρ̄)` or above are reported.
    pub report_slack: f64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        Self {
            starts: 64,
            tol: 1e-12,
            max_iter: 20_000,
            seed: 0,
            report_slack: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalMax {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizeReport {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub n_starts: usize,
    pub n_distinct_local_maxima: usize,
    /// Every run met the step tolerance.
    pub converged: bool,
    pub barycentre_value: f64,
    /// Distinct local maxima with value at least `f(ρ̄) - report_slack`,
    /// by decreasing value then lexicographic argmax.
    pub local_maxima: Vec<LocalMax>,
}

const FLOOR: f64 = 1e-12;

fn value(x: &[f64], d: f64, k: usize) -> f64 {
    f_overlap(x, d, k).unwrap_or(f64::NEG_INFINITY)
}

fn gradient(x: &[f64], d: f64, k: usize) -> Vec<f64> {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let arg = 1.0 - 2.0 / k as f64 + sq;
    x.iter()
        .map(|&v| -(v.max(FLOOR).ln() + 1.0) + d * v / arg)
        .collect()
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cum += ui;
        let t = (cum - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Projection onto `{row sums = col sums = 1/k}`.
fn project_affine(x: &[f64], k: usize) -> Vec<f64> {
    let kf = k as f64;
    let target = 1.0 / kf;
    let rows: Vec<f64> = (0..k)
        .map(|i| x[i * k..(i + 1) * k].iter().sum::<f64>() - target)
        .collect();
    let cols: Vec<f64> = (0..k)
        .map(|j| (0..k).map(|i| x[i * k + j]).sum::<f64>() - target)
        .collect();
    let excess: f64 = x.iter().sum::<f64>() - 1.0;
    let mut out = x.to_vec();
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] -= rows[i] / kf + cols[j] / kf - excess / (kf * kf);
        }
    }
    out
}

/// Dykstra's alternating projections onto the balanced polytope.
fn project_balanced(y: &[f64], k: usize) -> Vec<f64> {
    let len = y.len();
    let mut x = y.to_vec();
    let mut p = vec![0.0; len];
    let mut q = vec![0.0; len];
    for _ in 0..10_000 {
        let a_in: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + b).collect();
        let a = project_affine(&a_in, k);
        p = a_in.iter().zip(&a).map(|(s, t)| s - t).collect();
        let b_in: Vec<f64> = a.iter().zip(&q).map(|(s, t)| s + t).collect();
        let b: Vec<f64> = b_in.iter().map(|v| v.max(0.0)).collect();
        q = b_in.iter().zip(&b).map(|(s, t)| s - t).collect();
        let change = b
            .iter()
            .zip(&x)
            .map(|(s, t)| (s - t).abs())
            .fold(0.0, f64::max);
        x = b;
        if change < 1e-15 {
            break;
        }
    }
    x
}

fn project(y: &[f64], k: usize, domain: Domain) -> Vec<f64> {
    match domain {
        Domain::Full => project_simplex(y),
        Domain::Balanced => project_balanced(y, k),
    }
}

fn gamma_weights<R: Rng + ?Sized>(len: usize, shape: f64, rng: &mut R) -> Vec<f64> {
    let g = Gamma::new(shape, 1.0).expect("positive shape");
    let w: Vec<f64> = (0..len).map(|_| g.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Exactly balanced overlap: a Dirichlet(`shape`) mixture of `k²` uniformly
/// random permutation matrices, scaled by `1/k`.
pub fn sample_balanced_overlap<R: Rng + ?Sized>(
    k: usize,
    shape: f64,
    rng: &mut R,
) -> OverlapMatrix<f64> {
    let terms = k * k;
    let weights = gamma_weights(terms, shape, rng);
    let mut entries = vec![0.0; k * k];
    let mut perm: Vec<usize> = (0..k).collect();
    for w in weights {
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            entries[i * k + j] += w / k as f64;
        }
    }
    OverlapMatrix::new(k, entries).expect("convex combination")
}

/// Projected gradient ascent with Armijo backtracking from one start.
pub fn ascend_from(
    start: &[f64],
    d: f64,
    k: usize,
    domain: Domain,
    opts: &MaximizeOptions,
) -> LocalMax {
    let mut x = project(start, k, domain);
    let mut fx = value(&x, d, k);
    let mut step = 1.0;
    for it in 0..opts.max_iter {
        let g = gradient(&x, d, k);
        let mut accepted = None;
        let mut s = step;
        while s > 1e-16 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + s * b).collect();
            let y = project(&trial, k, domain);
            let fy = value(&y, d, k);
            let gain: f64 = g
                .iter()
                .zip(y.iter().zip(&x))
                .map(|(gi, (yi, xi))| gi * (yi - xi))
                .sum();
            if fy >= fx + 1e-4 * gain {
                accepted = Some((y, fy));
                break;
            }
            s *= 0.5;
        }
        let Some((y, fy)) = accepted else {
            return LocalMax {
                value: fx,
                argmax: x,
                converged: true,
                iterations: it,
            };
        };
        let moved = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = y;
        fx = fy;
        step = (s * 2.0).min(1e3);
        if moved < opts.tol {
            return LocalMax {
                value: fx,
                argmax: x,
                converged: true,
                iterations: it + 1,
            };
        }
    }
    LocalMax {
        value: fx,
        argmax: x,
        converged: false,
        iterations: opts.max_iter,
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Multi-start maximisation of `f` over the chosen domain.
pub fn maximize_f(
    d: f64,
    k: usize,
    domain: Domain,
    opts: &MaximizeOptions,
) -> Result<MaximizeReport> {
    if k < 2 || opts.starts == 0 || !(d >= 0.0) {
        return Err(invalid(format!(
            "need k >= 2, d >= 0 and at least one start (k = {k}, d = {d})"
        )));
    }
    let src = RandomSource::new(opts.seed, 0x6f76_6572);
    let runs: Vec<LocalMax> = (0..opts.starts)
        .map(|s| {
            let mut rng = src.derive(s as u64).rng();
            let start = match domain {
                Domain::Full => gamma_weights(k * k, 1.0, &mut rng),
                Domain::Balanced => sample_balanced_overlap(k, 1.0, &mut rng)
                    .as_slice()
                    .to_vec(),
            };
            ascend_from(&start, d, k, domain, opts)
        })
        .collect();
    let bar = value(OverlapMatrix::<f64>::barycentre(k).as_slice(), d, k);
    let mut distinct: Vec<LocalMax> = Vec::new();
    for r in &runs {
        let dup = distinct.iter_mut().find(|m| {
            m.argmax
                .iter()
                .zip(&r.argmax)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                < 1e-5
        });
        match dup {
            Some(m) if r.value > m.value => *m = r.clone(),
            Some(_) => {}
            None => distinct.push(r.clone()),
        }
    }
    distinct.sort_by(|a, b| {
        b.value
            .total_cmp(&a.value)
            .then_with(|| lex_cmp(&a.argmax, &b.argmax))
    });
    let best = distinct[0].clone();
    let n_distinct = distinct.len();
    let local_maxima = distinct
        .into_iter()
        .filter(|m| m.value >= bar - opts.report_slack)
        .collect();
    Ok(MaximizeReport {
        value: best.value,
        argmax: best.argmax,
        n_starts: opts.starts,
        n_distinct_local_maxima: n_distinct,
        converged: runs.iter().all(|r| r.converged),
        barycentre_value: bar,
        local_maxima,
    })
}
