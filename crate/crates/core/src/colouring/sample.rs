//! Exact uniform sampling of proper colourings and the random colouring model.

use num_bigint::BigUint;
use num_traits::Zero;

use super::count::{count_colourings_listed, CountLimits};
use super::Colouring;
use crate::error::{invalid, LabError, Result};
use crate::graph::{sample_gnm_simple, Graph, DEFAULT_REJECTION_CAP};
use crate::rng::{uniform_biguint, RandomSource};

/// Uniform proper `k`-colouring of `g`.
///
/// Vertices are fixed one at a time in index order; each allowed colour is
/// chosen with probability proportional to the exact number of proper
/// extensions of the partial colouring. Components are independent, so
/// extensions are counted on the current component only.
pub fn sample_uniform_colouring(g: &Graph, k: usize, src: RandomSource) -> Result<Colouring> {
    if k == 0 || k > 64 {
        return Err(invalid(format!("k must lie in 1..=64, got {k}")));
    }
    let limits = CountLimits::unbounded_components();
    let mut rng = src.rng();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut assignment = vec![0u32; g.n()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        let mut lists = vec![full; comp.len()];
        for i in 0..comp.len() {
            let mut weights: Vec<BigUint> = Vec::with_capacity(k);
            for j in 0..k {
                lists[i] = 1u64 << j;
                weights.push(count_colourings_listed(&sub, k, &lists, &limits)?);
            }
            let total: BigUint = weights.iter().sum();
            if total.is_zero() {
                return Err(LabError::Infeasible(format!(
                    "graph has no proper {k}-colouring"
                )));
            }
            let mut draw = uniform_biguint(&mut rng, &total);
            let mut chosen = k - 1;
            for (j, w) in weights.iter().enumerate() {
                if &draw < w {
                    chosen = j;
                    break;
                }
                draw -= w;
            }
            lists[i] = 1u64 << chosen;
            assignment[comp[i]] = chosen as u32;
        }
    }
    Colouring::new(k, assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RcOptions {
    /// Largest `n` accepted by the exact sampler.
    pub max_n: usize,
    /// Attempts allowed when rejecting uncolourable graphs.
    pub cap: u64,
}

impl Default for RcOptions {
    fn default() -> Self {
        Self {
            max_n: 200,
            cap: DEFAULT_REJECTION_CAP,
        }
    }
}

pub fn sample_rc_pair(
    n: usize,
    m: usize,
    k: usize,
    src: RandomSource,
) -> Result<(Graph, Colouring)> {
    sample_rc_pair_with(n, m, k, src, &RcOptions::default())
}

/// Random colouring model: `G(n,m)` conditioned on being `k`-colourable, then
/// a uniform colouring of it.
pub fn sample_rc_pair_with(
    n: usize,
    m: usize,
    k: usize,
    src: RandomSource,
    opts: &RcOptions,
) -> Result<(Graph, Colouring)> {
    if n > opts.max_n {
        return Err(LabError::ResourceLimit(format!(
            "n = {n} exceeds the exact sampler cap {}",
            opts.max_n
        )));
    }
    let limits = CountLimits::unbounded_components();
    let full = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    for attempt in 0..opts.cap {
        let g = sample_gnm_simple(n, m, src.derive(2 * attempt))?;
        let z: BigUint = count_colourings_listed(&g, k, &vec![full; n], &limits)?;
        if !z.is_zero() {
            let c = sample_uniform_colouring(&g, k, src.derive(2 * attempt + 1))?;
            return Ok((g, c));
        }
    }
    Err(LabError::ResourceLimit(format!(
        "no {k}-colourable graph within {} attempts",
        opts.cap
    )))
}
