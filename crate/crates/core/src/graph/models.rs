//! The random graph models: `𝒢(n,m)` with replacement, uniform simple
//! `G(n,m)`, and the planted pair.

use std::collections::HashSet;

use rand::Rng;

use super::{pair_count, pair_from_index, pair_index, Edge, Graph};
use crate::colouring::Colouring;
use crate::error::{invalid, LabError, Result};
use crate::rng::RandomSource;

pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

/// Multigraph of `m` independent uniform draws from the `C(n,2)` pairs.
pub fn sample_gnm_multigraph(n: usize, m: usize, src: RandomSource) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("multigraph model needs n >= 2, got {n}")));
    }
    let total = pair_count(n);
    let mut rng = src.rng();
    let edges = (0..m)
        .map(|_| pair_from_index(rng.random_range(0..total)))
        .collect();
    Ok(Graph::from_edges_unchecked(n, edges, false))
}

/// Floyd's algorithm: `m` distinct indices from `[0, total)`, uniformly over
/// all `m`-subsets. Indices are returned in insertion order.
pub fn floyd_sample<R: Rng + ?Sized>(total: u64, m: u64, rng: &mut R) -> Vec<u64> {
    assert!(m <= total);
    let mut chosen = HashSet::with_capacity(m as usize);
    let mut order = Vec::with_capacity(m as usize);
    for j in (total - m)..total {
        let t = rng.random_range(0..=j);
        let pick = if chosen.contains(&t) { j } else { t };
        chosen.insert(pick);
        order.push(pick);
    }
    order
}

/// Uniform simple graph with exactly `m` edges.
pub fn sample_gnm_simple(n: usize, m: usize, src: RandomSource) -> Result<Graph> {
    let total = pair_count(n);
    if m as u64 > total {
        return Err(invalid(format!("m = {m} exceeds C({n},2) = {total}")));
    }
    let mut rng = src.rng();
    let edges = floyd_sample(total, m as u64, &mut rng)
        .into_iter()
        .map(pair_from_index)
        .collect();
    Ok(Graph::from_edges_unchecked(n, edges, true))
}

/// True iff no pair occurs twice.
pub fn is_simple_event(g: &Graph) -> bool {
    g.has_distinct_edges()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedPair {
    pub graph: Graph,
    pub colouring: Colouring,
}

/// Smallest possible `Forb` over maps `[n] -> [k]` (the balanced profile).
fn min_forb(n: usize, k: usize) -> u64 {
    let q = (n / k) as u64;
    let r = (n % k) as u64;
    let c2 = |x: u64| x * x.saturating_sub(1) / 2;
    r * c2(q + 1) + (k as u64 - r) * c2(q)
}

pub fn sample_planted_pair(n: usize, m: usize, k: usize, src: RandomSource) -> Result<PlantedPair> {
    sample_planted_pair_with_cap(n, m, k, src, DEFAULT_REJECTION_CAP)
}

/// Planted model: a uniform map with `Forb(σ) <= C(n,2) - m` by rejection from
/// `[k]^n`, then a uniform simple graph on `m` of its bichromatic pairs.
pub fn sample_planted_pair_with_cap(
    n: usize,
    m: usize,
    k: usize,
    src: RandomSource,
    cap: u64,
) -> Result<PlantedPair> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let total = pair_count(n);
    if m as u64 > total || min_forb(n, k) > total - m as u64 {
        return Err(LabError::Infeasible(format!(
            "no map [{n}] -> [{k}] leaves {m} bichromatic pairs"
        )));
    }
    let mut rng = src.rng();
    let mut attempts = 0u64;
    let colouring = loop {
        if attempts == cap {
            return Err(LabError::ResourceLimit(format!(
                "planted colouring rejection exceeded {cap} attempts"
            )));
        }
        attempts += 1;
        let values: Vec<u32> = (0..n).map(|_| rng.random_range(0..k as u32)).collect();
        let c = Colouring::new(k, values)?;
        if c.forb() <= total - m as u64 {
            break c;
        }
    };
    let bichromatic = bichromatic_pairs(&colouring);
    let edges: Vec<Edge> = floyd_sample(bichromatic.len() as u64, m as u64, &mut rng)
        .into_iter()
        .map(|i| bichromatic[i as usize])
        .collect();
    Ok(PlantedPair {
        graph: Graph::from_edges_unchecked(n, edges, true),
        colouring,
    })
}

fn bichromatic_pairs(c: &Colouring) -> Vec<Edge> {
    let s = c.as_slice();
    let mut out = Vec::new();
    for v in 1..s.len() as u32 {
        for u in 0..v {
            if s[u as usize] != s[v as usize] {
                out.push((u, v));
            }
        }
    }
    debug_assert!(out
        .windows(2)
        .all(|w| pair_index(w[0].0, w[0].1) < pair_index(w[1].0, w[1].1)));
    out
}

/// `m` independent uniform draws from the pairs that are bichromatic under
/// `colouring`: the law of `𝒢(n,m)` conditioned on `colouring` being proper.
pub fn sample_bichromatic_multigraph(
    colouring: &Colouring,
    m: usize,
    src: RandomSource,
) -> Result<Graph> {
    let n = colouring.n();
    let total = pair_count(n);
    if m > 0 && colouring.forb() == total {
        return Err(LabError::Infeasible(
            "colouring has no bichromatic pair".into(),
        ));
    }
    let s = colouring.as_slice();
    let mut rng = src.rng();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = pair_from_index(rng.random_range(0..total));
        if s[u as usize] != s[v as usize] {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges, false))
}
